#include "pureres/version.hpp"

namespace pureres {

const char* version_string() { return "pureres 0.1.0"; }

}  // namespace pureres
