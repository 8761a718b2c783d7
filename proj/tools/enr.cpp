#include <cstdio>
int main() { std::puts("cli not yet wired"); return 1; }
