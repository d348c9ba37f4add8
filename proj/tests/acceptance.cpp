// Acceptance suite: one line per criterion, details indented below.
// Exit status is nonzero when any criterion fails.

#include "hopf/verify.hpp"

#include <iostream>

int main(int argc, char** argv) {
    const bool verbose = argc > 1 && std::string(argv[1]) == "-v";
    int failures = 0;
    hopf::acceptance::run_all([&](const hopf::acceptance::CriterionResult& r) {
        std::cout << hopf::acceptance::format_line(r) << "\n";
        std::size_t shown = 0;
        for (const auto& d : r.details) {
            if (!verbose && shown == 12) {
                std::cout << "    ... " << r.details.size() - shown << " more\n";
                break;
            }
            std::cout << "    " << d << "\n";
            ++shown;
        }
        std::cout.flush();
        if (r.status == hopf::acceptance::Status::fail) ++failures;
    });
    std::cout << (failures ? std::to_string(failures) + " criterion(s) failed" : std::string("all criteria passed"))
              << "\n";
    return failures ? 1 : 0;
}
