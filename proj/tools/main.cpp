#include <iostream>

auto main() -> int
{
    std::cout << "btlab\n";
    return 0;
}
