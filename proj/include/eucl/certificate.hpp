#pragma once

// Pair hypotheses for a Euclidean ideal class in one of two cyclic fields of
// odd prime degree, and the residue class d mod f behind the sieve argument.

#include "eucl/classgroup.hpp"

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace eucl {

// A field with its class group and genus data, computed once and shared.
struct FieldAnalysis {
    AbelianFieldSpec spec;  // at its conductor
    IntPoly polynomial;
    std::shared_ptr<const MaximalOrder> order;
    ClassGroupResult class_group;
    GenusCertificate genus;
};

FieldAnalysis analyze_field(const AbelianFieldSpec& spec, const ClassGroupConfig& cfg = {});

// Hilbert class field when it is certified abelian over Q: the genus field, or
// K itself when h = 1. std::invalid_argument otherwise.
AbelianFieldSpec hilbert_class_field(const AbelianFieldSpec& spec, const ClassGroupResult& cg);

struct PairContext {
    AbelianFieldSpec K1, K2;
    AbelianFieldSpec H_K1, H_K2;
    long h1 = 1, h2 = 1;
    u64 f1 = 1, f2 = 1;
    u64 f = 16;  // lcm(16, f1, f2)
    SubgroupModN G, H1, H2, Hprime, Hdoubleprime;  // all at modulus f
};

PairContext build_pair_context(const AbelianFieldSpec& K1, const AbelianFieldSpec& K2, const ClassGroupResult& cg1,
                               const ClassGroupResult& cg2);

// Some rational prime ramifies more in K1K2 than in K_i.
bool is_relatively_ramified(const AbelianFieldSpec& K1, const AbelianFieldSpec& K2, int i);
bool is_relatively_ramified(const PairContext& ctx, int i);

struct CertificateChecks {
    bool in_G = false;
    bool generates_C1 = false;
    bool generates_C2 = false;
    bool gcd_condition = false;  // gcd((d - 1)/2, f) = 1
    bool all() const { return in_G && generates_C1 && generates_C2 && gcd_condition; }
    bool operator==(const CertificateChecks&) const = default;
};

struct ResidueClassCertificate {
    u64 f = 16;
    u64 d = 15;
    u64 u1 = 15;  // smallest positive integer = d mod f
    CertificateChecks checks;
    bool operator==(const ResidueClassCertificate&) const = default;
};

// d = -c with c of odd order generating G/H' and G/H''; first c in increasing
// residue order. InconsistencyError("no simultaneous generator") if none.
ResidueClassCertificate choose_residue_class(const PairContext& ctx);

// Recomputed from the field specs and residues alone. Condition 4 is also
// checked as d != 1 mod l for odd primes l | f and d != 1 mod 4; a
// disagreement between the two forms is an InconsistencyError.
CertificateChecks verify_certificate(const PairContext& ctx, const ResidueClassCertificate& cert);

enum class Outcome { qualified, rejected, undecided };
const char* to_string(Outcome o);

struct FieldSummary {
    std::string descriptor;  // "level:generators" at the conductor
    u64 conductor = 1;
    u64 degree = 1;
    std::string polynomial;
    long class_number = 0;  // 0 when not computed
    long genus_number = 0;
    bool operator==(const FieldSummary&) const = default;
};

struct QualificationReport {
    std::array<FieldSummary, 2> fields;
    bool distinct = false;
    bool degrees_odd_prime = false;
    bool class_groups_cyclic = false;
    std::array<HcfStatus, 2> hcf_abelian{HcfStatus::unknown, HcfStatus::unknown};
    std::array<bool, 2> relatively_ramified{false, false};
    Outcome conclusion = Outcome::undecided;
    std::vector<std::string> reasons;
    std::string statement;  // set when qualified
    std::optional<ResidueClassCertificate> certificate;
    bool operator==(const QualificationReport&) const = default;
};

inline constexpr const char* kConclusionStatement = "at least one of K1, K2 has a Euclidean ideal class";

// Resource or precision failures give `undecided`, never `rejected`.
QualificationReport qualify_pair(const AbelianFieldSpec& K1, const AbelianFieldSpec& K2,
                                 const ClassGroupConfig& cfg = {});
QualificationReport qualify_pair(const FieldAnalysis& a1, const FieldAnalysis& a2);

struct CorollaryReport {
    std::array<u64, 4> primes{};
    // admissible cubic fields of Q(zeta_{p1 q1}) and Q(zeta_{p2 q2})
    std::array<std::vector<FieldSummary>, 2> admissible;
    std::vector<QualificationReport> pairs;
    bool operator==(const CorollaryReport&) const = default;
};

// Cubic fields of conductor p1 q1 with h = 3, or of level p1 q1 with h = 1
// (same for p2 q2), qualified in all cross pairs. std::invalid_argument for
// primes that are not distinct or not 1 mod 3.
CorollaryReport corollary_driver(u64 p1, u64 q1, u64 p2, u64 q2, const ClassGroupConfig& cfg = {});

struct ReferenceRow {
    int table = 1;  // 1: class number 1, 2: class number 3
    int serial = 0;
    u64 p = 0, q = 0;
    const char* polynomial = "";
    long class_number = 0;
};
// Published cubic subfields of Q(zeta_pq) with their class numbers.
const std::vector<ReferenceRow>& reference_rows();

struct TableRow {
    u64 p = 0, q = 0;
    FieldSummary field;
    HcfStatus hcf_abelian = HcfStatus::unknown;
    // reference rows (table, serial) whose polynomial identifies to this field
    std::vector<std::pair<int, int>> references;
    bool operator==(const TableRow&) const = default;
};

// The four cubic subfields of Q(zeta_pq) per pair, ordered by (conductor,
// fixing subgroup).
std::vector<TableRow> reproduce_tables(const std::vector<std::pair<u64, u64>>& prime_pairs,
                                       const ClassGroupConfig& cfg = {});

}  // namespace eucl
