#include <cstdio>

int main() {
  std::printf("acceptance harness not yet implemented\n");
  return 1;
}
