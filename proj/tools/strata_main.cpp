#include <exception>
#include <iostream>
#include <vector>

#include "strata/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        return strata::run_command(args, std::cout, std::cerr);
    } catch (const strata::internal_error& e) {
        std::cerr << "internal error (please report): " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return 3;
    }
}
