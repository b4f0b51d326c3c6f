#pragma once

// Text forms of abelian fields: "level:g1,g2,..." (generators of the fixing
// subgroup) or a monic polynomial such as "x^3-x^2-30x-27".

#include "eucl/cyclotomic.hpp"

#include <string>
#include <string_view>

namespace eucl {

// Generators chosen greedily in increasing order, at the conductor.
std::string field_descriptor(const AbelianFieldSpec& spec);

// std::invalid_argument for malformed text, a polynomial that is not monic
// irreducible of odd prime degree, or one that defines no cyclic field.
AbelianFieldSpec parse_field_descriptor(std::string_view text);

}  // namespace eucl
