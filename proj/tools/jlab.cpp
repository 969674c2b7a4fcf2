// Command-line front end; all logic lives in jordanlab/io.hpp so the test
// suite can drive commands in-process.

#include <unistd.h>

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "jordanlab/io.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    std::string stdin_text;
    if (!isatty(fileno(stdin))) {
        std::stringstream ss;
        ss << std::cin.rdbuf();
        stdin_text = ss.str();
    }
    jlab::CommandResult res = jlab::run_command(args, stdin_text);
    std::cout << res.output;
    std::cerr << res.error;
    return res.status;
}
