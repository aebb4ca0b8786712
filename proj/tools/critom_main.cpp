#include <cstdio>
int main() { std::puts("critom"); return 0; }
