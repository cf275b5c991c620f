#pragma once

#include <string>

#include "kirigami/pipeline.hpp"

namespace kirigami::testing {

inline std::string data_path(const std::string& name) { return std::string(KIRIGAMI_TEST_DATA) + "/" + name; }
inline KirigamiSpec fixture(const std::string& name) { return load_spec(data_path(name)); }

}  // namespace kirigami::testing
