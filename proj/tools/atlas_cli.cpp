#include <cstdio>

#include "gl2atlas.h"

int main() {
  std::printf("%s\n", gl2atlas_version());
  return 2;
}
