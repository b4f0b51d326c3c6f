#include "eucl/descriptor.hpp"

#include "eucl/order.hpp"

#include <charconv>
#include <numeric>
#include <stdexcept>

namespace eucl {

namespace {

u64 parse_u64(std::string_view s)
{
    u64 v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
        throw std::invalid_argument("field descriptor: bad integer '" + std::string(s) + "'");
    return v;
}

// exact k-th root of n, or 0
Int exact_root(const Int& n, unsigned long k)
{
    Int r;
    if (mpz_root(r.get_mpz_t(), n.get_mpz_t(), k) == 0) return 0;
    return r;
}

}  // namespace

std::string field_descriptor(const AbelianFieldSpec& spec0)
{
    auto spec = at_conductor(spec0);
    std::vector<u64> gens;
    auto closure = zmod::subgroup_closure(gens, spec.level);
    for (u64 x : spec.fixing.elements()) {
        if (closure.contains(x)) continue;
        gens.push_back(x);
        closure = zmod::subgroup_closure(gens, spec.level);
    }
    std::string out = std::to_string(spec.level) + ":";
    for (std::size_t i = 0; i < gens.size(); ++i) out += (i ? "," : "") + std::to_string(gens[i]);
    return out;
}

AbelianFieldSpec parse_field_descriptor(std::string_view text)
{
    auto colon = text.find(':');
    if (colon != std::string_view::npos) {
        u64 level = parse_u64(text.substr(0, colon));
        if (level == 0) throw std::invalid_argument("field descriptor: level must be positive");
        std::vector<u64> gens;
        auto rest = text.substr(colon + 1);
        while (!rest.empty()) {
            auto comma = rest.find(',');
            u64 g = parse_u64(rest.substr(0, comma));
            if (std::gcd(g, level) != 1) throw std::invalid_argument("field descriptor: generator not a unit");
            gens.push_back(g % level);
            if (comma == std::string_view::npos) break;
            rest = rest.substr(comma + 1);
        }
        return at_conductor(AbelianFieldSpec::from_generators(level, gens));
    }
    IntPoly f;
    try {
        f = IntPoly::parse(text);
    } catch (const std::exception& e) {
        throw std::invalid_argument(std::string("field descriptor: ") + e.what());
    }
    const int n = f.degree();
    if (!f.is_monic() || n < 3 || n % 2 == 0 || !zmod::is_prime(static_cast<u64>(n)))
        throw std::invalid_argument("field descriptor: need a monic polynomial of odd prime degree");
    auto o = maximal_order(f);
    // a cyclic field of prime degree n has discriminant conductor^(n-1)
    Int c = exact_root(abs(o->discriminant()), static_cast<unsigned long>(n - 1));
    if (c <= 1 || !c.fits_ulong_p()) throw std::invalid_argument("field descriptor: polynomial defines no cyclic field");
    auto hit = identify_field(f, enumerate_prime_degree_subfields(c.get_ui(), static_cast<u64>(n)));
    if (!hit) throw std::invalid_argument("field descriptor: polynomial defines no cyclic field");
    return *hit;
}

}  // namespace eucl
