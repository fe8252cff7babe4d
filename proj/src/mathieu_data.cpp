#include "cforge/mathieu_data.hpp"

#include <stdexcept>

namespace cforge {

// The classical generators: an 11-cycle together with
// (2 6 10 7)(3 9 4 5), and for M12 additionally the outer involution
// (0 11)(1 10)(2 5)(3 7)(4 8)(6 9). Orders 7920 and 95040 are certified
// when the groups are built.
const std::vector<Perm>& mathieu_gens(const std::string& name) {
  static const std::vector<Perm> m11 = {
      {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 0},
      {0, 1, 6, 9, 5, 3, 10, 2, 8, 4, 7},
  };
  static const std::vector<Perm> m12 = {
      {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 0, 11},
      {0, 1, 6, 9, 5, 3, 10, 2, 8, 4, 7, 11},
      {11, 10, 5, 7, 8, 2, 9, 3, 4, 6, 1, 0},
  };
  if (name == "M11") return m11;
  if (name == "M12") return m12;
  throw std::invalid_argument("mathieu_gens: unknown name " + name);
}

}  // namespace cforge
