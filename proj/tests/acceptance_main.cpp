#include <cstdlib>
#include <iostream>
#include <string>

#include "persist/acceptance.hpp"

int main(int argc, char** argv) {
    persist::acceptance::Options opt;
    for (int i = 1; i < argc; ++i) opt.only.push_back(std::stoi(argv[i]));
    const auto results = persist::acceptance::run(opt, [](const persist::acceptance::CriterionResult& r) {
        std::cout << persist::acceptance::format_line(r) << std::endl;
    });
    bool ok = true;
    for (const auto& r : results) ok &= r.pass;
    return ok ? EXIT_SUCCESS : EXIT_FAILURE;
}
