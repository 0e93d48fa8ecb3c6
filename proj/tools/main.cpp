#include <c2ops/cli.hpp>

#include <iostream>

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    auto res = c2ops::run_command(std::move(args));
    std::cout << res.out;
    return res.code;
}
