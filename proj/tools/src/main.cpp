#include <string>
#include <vector>

#include "jspec/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return jspec::run(args);
}
