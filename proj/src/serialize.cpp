#include "eucl/serialize.hpp"

#include <stdexcept>

namespace eucl {

namespace {

std::string dec(u64 v)
{
    return std::to_string(v);
}

u64 undec(const json& j)
{
    const auto& s = j.get_ref<const std::string&>();
    std::size_t pos = 0;
    u64 v = std::stoull(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("json: bad residue '" + s + "'");
    return v;
}

template <class E>
E enum_from(const json& j, std::initializer_list<E> all)
{
    const auto& s = j.get_ref<const std::string&>();
    for (E e : all)
        if (s == to_string(e)) return e;
    throw std::invalid_argument("json: unknown value '" + s + "'");
}

}  // namespace

void to_json(json& j, HcfStatus s) { j = to_string(s); }
void from_json(const json& j, HcfStatus& s)
{
    s = enum_from(j, {HcfStatus::certified, HcfStatus::trivial, HcfStatus::unknown});
}
void to_json(json& j, Outcome o) { j = to_string(o); }
void from_json(const json& j, Outcome& o)
{
    o = enum_from(j, {Outcome::qualified, Outcome::rejected, Outcome::undecided});
}
void to_json(json& j, HalfType t) { j = to_string(t); }
void from_json(const json& j, HalfType& t) { t = enum_from(j, {HalfType::prime, HalfType::semiprime}); }

void to_json(json& j, const FieldSummary& x)
{
    j = json{{"descriptor", x.descriptor},     {"conductor", x.conductor},       {"degree", x.degree},
             {"polynomial", x.polynomial},     {"class_number", x.class_number}, {"genus_number", x.genus_number}};
}
void from_json(const json& j, FieldSummary& x)
{
    j.at("descriptor").get_to(x.descriptor);
    j.at("conductor").get_to(x.conductor);
    j.at("degree").get_to(x.degree);
    j.at("polynomial").get_to(x.polynomial);
    j.at("class_number").get_to(x.class_number);
    j.at("genus_number").get_to(x.genus_number);
}

void to_json(json& j, const CertificateChecks& x)
{
    j = json{{"in_G", x.in_G},
             {"generates_C1", x.generates_C1},
             {"generates_C2", x.generates_C2},
             {"gcd_condition", x.gcd_condition}};
}
void from_json(const json& j, CertificateChecks& x)
{
    j.at("in_G").get_to(x.in_G);
    j.at("generates_C1").get_to(x.generates_C1);
    j.at("generates_C2").get_to(x.generates_C2);
    j.at("gcd_condition").get_to(x.gcd_condition);
}

void to_json(json& j, const ResidueClassCertificate& x)
{
    j = json{{"f", dec(x.f)}, {"d", dec(x.d)}, {"u1", dec(x.u1)}, {"checks", x.checks}};
}
void from_json(const json& j, ResidueClassCertificate& x)
{
    x.f = undec(j.at("f"));
    x.d = undec(j.at("d"));
    x.u1 = undec(j.at("u1"));
    j.at("checks").get_to(x.checks);
}

void to_json(json& j, const QualificationReport& x)
{
    j = json{{"fields", x.fields},
             {"distinct", x.distinct},
             {"degrees_odd_prime", x.degrees_odd_prime},
             {"class_groups_cyclic", x.class_groups_cyclic},
             {"hcf_abelian", x.hcf_abelian},
             {"relatively_ramified", x.relatively_ramified},
             {"conclusion", x.conclusion},
             {"reasons", x.reasons},
             {"statement", x.statement},
             {"certificate", x.certificate ? json(*x.certificate) : json(nullptr)}};
}
void from_json(const json& j, QualificationReport& x)
{
    j.at("fields").get_to(x.fields);
    j.at("distinct").get_to(x.distinct);
    j.at("degrees_odd_prime").get_to(x.degrees_odd_prime);
    j.at("class_groups_cyclic").get_to(x.class_groups_cyclic);
    j.at("hcf_abelian").get_to(x.hcf_abelian);
    j.at("relatively_ramified").get_to(x.relatively_ramified);
    j.at("conclusion").get_to(x.conclusion);
    j.at("reasons").get_to(x.reasons);
    j.at("statement").get_to(x.statement);
    if (j.at("certificate").is_null())
        x.certificate.reset();
    else
        x.certificate = j.at("certificate").get<ResidueClassCertificate>();
}

void to_json(json& j, const CorollaryReport& x)
{
    j = json{{"primes", x.primes}, {"admissible", x.admissible}, {"pairs", x.pairs}};
}
void from_json(const json& j, CorollaryReport& x)
{
    j.at("primes").get_to(x.primes);
    j.at("admissible").get_to(x.admissible);
    j.at("pairs").get_to(x.pairs);
}

void to_json(json& j, const TableRow& x)
{
    json refs = json::array();
    for (auto [t, s] : x.references) refs.push_back(json{{"table", t}, {"serial", s}});
    j = json{{"p", x.p}, {"q", x.q}, {"field", x.field}, {"hcf_abelian", x.hcf_abelian}, {"references", refs}};
}
void from_json(const json& j, TableRow& x)
{
    j.at("p").get_to(x.p);
    j.at("q").get_to(x.q);
    j.at("field").get_to(x.field);
    j.at("hcf_abelian").get_to(x.hcf_abelian);
    x.references.clear();
    for (const auto& r : j.at("references")) x.references.emplace_back(r.at("table").get<int>(), r.at("serial").get<int>());
}

void to_json(json& j, const SieveParams& x)
{
    j = json{{"u1", dec(x.u1)}, {"f", dec(x.f)}, {"a", x.a}, {"b", x.b}, {"epsilon", x.epsilon}, {"X", x.X}};
}
void from_json(const json& j, SieveParams& x)
{
    x.u1 = undec(j.at("u1"));
    x.f = undec(j.at("f"));
    j.at("a").get_to(x.a);
    j.at("b").get_to(x.b);
    j.at("epsilon").get_to(x.epsilon);
    j.at("X").get_to(x.X);
}

void to_json(json& j, const SieveRecord& x)
{
    j = json{{"p", x.p},
             {"half_type", x.half_type},
             {"q1", x.q1},
             {"q2", x.q2},
             {"signature", x.signature},
             {"cell", x.cell},
             {"winner_index", x.winner_index},
             {"winner", dec(x.winner)}};
}
void from_json(const json& j, SieveRecord& x)
{
    j.at("p").get_to(x.p);
    j.at("half_type").get_to(x.half_type);
    j.at("q1").get_to(x.q1);
    j.at("q2").get_to(x.q2);
    j.at("signature").get_to(x.signature);
    j.at("cell").get_to(x.cell);
    j.at("winner_index").get_to(x.winner_index);
    x.winner = undec(j.at("winner"));
}

void to_json(json& j, const SieveReport& x)
{
    j = json{{"params", x.params},
             {"J_count", x.J_count},
             {"M_count", x.M_count},
             {"records", x.records},
             {"M_n_counts", x.M_n_counts},
             {"dominant_n0", x.dominant_n0},
             {"primitive_root_count", x.primitive_root_count},
             {"J_density", x.J_density},
             {"M_density", x.M_density},
             {"primitive_root_density", x.primitive_root_density}};
}
void from_json(const json& j, SieveReport& x)
{
    j.at("params").get_to(x.params);
    j.at("J_count").get_to(x.J_count);
    j.at("M_count").get_to(x.M_count);
    j.at("records").get_to(x.records);
    j.at("M_n_counts").get_to(x.M_n_counts);
    j.at("dominant_n0").get_to(x.dominant_n0);
    j.at("primitive_root_count").get_to(x.primitive_root_count);
    j.at("J_density").get_to(x.J_density);
    j.at("M_density").get_to(x.M_density);
    j.at("primitive_root_density").get_to(x.primitive_root_density);
}

void to_json(json& j, const LadderRung& x)
{
    j = json{{"X", x.X},
             {"J_count", x.J_count},
             {"M_count", x.M_count},
             {"primitive_root_count", x.primitive_root_count},
             {"J_density", x.J_density},
             {"M_density", x.M_density}};
}
void from_json(const json& j, LadderRung& x)
{
    j.at("X").get_to(x.X);
    j.at("J_count").get_to(x.J_count);
    j.at("M_count").get_to(x.M_count);
    j.at("primitive_root_count").get_to(x.primitive_root_count);
    j.at("J_density").get_to(x.J_density);
    j.at("M_density").get_to(x.M_density);
}

json envelope(const std::string& command, json result)
{
    return json{{"schema", kSchemaVersion}, {"command", command}, {"result", std::move(result)}};
}

json open_envelope(const json& doc)
{
    if (!doc.is_object() || !doc.contains("schema") || doc.at("schema") != kSchemaVersion)
        throw std::invalid_argument("json: unsupported or missing schema version");
    return doc.at("result");
}

std::string dump(const json& j)
{
    return j.dump(2) + "\n";
}

}  // namespace eucl
