#include <iostream>
int main() { std::cout << "hgshift\n"; return 0; }
