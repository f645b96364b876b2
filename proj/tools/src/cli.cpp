#include "jspec/cli.hpp"

#include <iostream>

namespace jspec {

int run(const std::vector<std::string>& args) {
    (void)args;
    std::cerr << "jspec: command-line interface not wired up yet\n";
    return 3;
}

}  // namespace jspec
