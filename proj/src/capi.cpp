#include "gl2atlas.h"

extern "C" const char* gl2atlas_version(void) { return "0.1.0"; }
