#pragma once

#include <string>
#include <vector>

#include "cforge/perm.hpp"

namespace cforge {

// Standard generators of the Mathieu groups M11 (degree 11) and M12
// (degree 12), shipped as explicit image arrays. Throws
// std::invalid_argument for any other name.
const std::vector<Perm>& mathieu_gens(const std::string& name);

}  // namespace cforge
