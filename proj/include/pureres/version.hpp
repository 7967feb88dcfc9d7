#pragma once

namespace pureres {

const char* version_string();

}  // namespace pureres
