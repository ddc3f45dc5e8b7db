#include <vector>

#include "preeb/cli.hpp"

int main(int argc, char** argv) {
    return preeb::run_cli(std::vector<std::string>(argv + 1, argv + argc));
}
