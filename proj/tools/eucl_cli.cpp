// eucl: command-line front end. Exit codes: 0 ok, 1 usage, 2 rejected,
// 3 undecided (resource or precision cap), 4 internal inconsistency.

#include "eucl/certificate.hpp"
#include "eucl/descriptor.hpp"
#include "eucl/errors.hpp"
#include "eucl/serialize.hpp"
#include "eucl/sieve.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace eucl;

namespace {

enum Exit { kOk = 0, kUsage = 1, kRejected = 2, kUndecided = 3, kInternal = 4 };

struct Globals {
    std::string output = "json";
    std::string out_file;
    u64 seed = zmod::kDefaultSeed;
    u64 max_nodes = kDefaultMaxNodes;

    ClassGroupConfig classgroup() const
    {
        ClassGroupConfig c;
        c.max_nodes = max_nodes;
        return c;
    }
};

class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

std::string num(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

std::string csv_cell(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
}

void emit(const Globals& g, const std::string& text)
{
    if (g.out_file.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(g.out_file, std::ios::binary);
    if (!f) throw UsageError("cannot open " + g.out_file);
    f << text;
}

std::string envelope_text(const Globals& g, const std::string& command, json result)
{
    auto doc = envelope(command, std::move(result));
    doc["seed"] = g.seed;
    return dump(doc);
}

AbelianFieldSpec field_arg(const std::string& s)
{
    try {
        return parse_field_descriptor(s);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

int outcome_exit(Outcome o)
{
    return o == Outcome::qualified ? kOk : (o == Outcome::rejected ? kRejected : kUndecided);
}

int cmd_fields(const Globals& g, u64 n, u64 p)
{
    if (n == 0) throw UsageError("fields: n must be positive");
    if (!zmod::is_prime(p)) throw UsageError("fields: p must be prime");
    auto subs = enumerate_prime_degree_subfields(n, p);
    if (g.output == "csv") {
        std::ostringstream os;
        os << "descriptor,conductor,degree,polynomial,genus_number\n";
        for (const auto& s : subs)
            os << csv_cell(field_descriptor(s)) << ',' << s.level << ',' << s.degree << ',' << defining_polynomial(s).to_string()
               << ',' << genus_number(s).genus_number << '\n';
        emit(g, os.str());
        return kOk;
    }
    json rows = json::array();
    for (const auto& s : subs) {
        auto gc = genus_number(s);
        json ram = json::array();
        for (auto [q, e] : gc.ramified_primes) ram.push_back(json{{"q", q}, {"e", e}});
        rows.push_back(json{{"descriptor", field_descriptor(s)},
                            {"conductor", s.level},
                            {"degree", s.degree},
                            {"polynomial", defining_polynomial(s).to_string()},
                            {"genus_number", gc.genus_number},
                            {"ramified_primes", ram}});
    }
    emit(g, envelope_text(g, "fields", json{{"n", n}, {"p", p}, {"subfields", rows}}));
    return kOk;
}

int cmd_qualify(const Globals& g, const std::string& a, const std::string& b)
{
    auto r = qualify_pair(field_arg(a), field_arg(b), g.classgroup());
    emit(g, envelope_text(g, "qualify", r));
    return outcome_exit(r.conclusion);
}

int cmd_corollary(const Globals& g, const std::vector<u64>& ps)
{
    if (ps.size() != 4) throw UsageError("corollary: need four primes");
    CorollaryReport r;
    try {
        r = corollary_driver(ps[0], ps[1], ps[2], ps[3], g.classgroup());
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("corollary: ") + e.what());
    }
    emit(g, envelope_text(g, "corollary", r));
    int code = kOk;
    for (const auto& q : r.pairs) code = std::max(code, outcome_exit(q.conclusion));
    return code;
}

std::pair<u64, u64> parse_pair(const std::string& s)
{
    auto c = s.find(',');
    if (c == std::string::npos) throw UsageError("tables: pairs look like 7,13");
    try {
        std::size_t i = 0, j = 0;
        u64 p = std::stoull(s.substr(0, c), &i);
        u64 q = std::stoull(s.substr(c + 1), &j);
        if (i != c || j != s.size() - c - 1) throw std::invalid_argument(s);
        return {p, q};
    } catch (const std::logic_error&) {
        throw UsageError("tables: bad pair '" + s + "'");
    }
}

int cmd_tables(const Globals& g, const std::vector<std::string>& pairs)
{
    std::vector<std::pair<u64, u64>> ps;
    for (const auto& s : pairs) {
        auto pq = parse_pair(s);
        if (!zmod::is_prime(pq.first) || !zmod::is_prime(pq.second) || pq.first == pq.second)
            throw UsageError("tables: need two distinct primes");
        ps.push_back(pq);
    }
    auto rows = reproduce_tables(ps, g.classgroup());
    if (g.output == "csv") {
        std::ostringstream os;
        os << "p,q,conductor,polynomial,class_number,genus_number,hcf_abelian,references\n";
        for (const auto& r : rows) {
            os << r.p << ',' << r.q << ',' << r.field.conductor << ',' << r.field.polynomial << ','
               << r.field.class_number << ',' << r.field.genus_number << ',' << to_string(r.hcf_abelian) << ',';
            for (std::size_t i = 0; i < r.references.size(); ++i)
                os << (i ? ";" : "") << "T" << r.references[i].first << "." << r.references[i].second;
            os << '\n';
        }
        emit(g, os.str());
        return kOk;
    }
    emit(g, envelope_text(g, "tables", rows));
    return kOk;
}

struct SieveArgs {
    u64 u1 = 0, f = 0;
    u64 X = 1'000'000;
    double a = 0.30, b = 0.45, epsilon = -1;
    std::vector<std::string> pair;
    u64 ladder_start = 0;
};

std::string ladder_csv(const std::vector<LadderRung>& ladder)
{
    std::ostringstream os;
    os << "X,J_count,M_count,primitive_root_count,J_density,M_density\n";
    for (const auto& r : ladder)
        os << r.X << ',' << r.J_count << ',' << r.M_count << ',' << r.primitive_root_count << ',' << num(r.J_density)
           << ',' << num(r.M_density) << '\n';
    return os.str();
}

int cmd_sieve(const Globals& g, const SieveArgs& s)
{
    SieveParams p;
    p.a = s.a;
    p.b = s.b;
    p.epsilon = s.epsilon < 0 ? default_epsilon(s.b) : s.epsilon;
    p.X = s.X;
    if (s.pair.empty()) {
        if (!s.u1 || !s.f) throw UsageError("sieve: give --u1 and --f, or --pair");
        p.u1 = s.u1;
        p.f = s.f;
        try {
            validate(p);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        SieveReport rep;
        rep.params = p;
        rep.records = heath_brown_set(p);
        rep.J_count = rep.records.size();
        rep.J_density = density_ratio(rep.J_count, p.X);
        if (g.output == "csv") {
            emit(g, sieve_csv(rep));
        } else {
            emit(g, envelope_text(g, "sieve", json{{"mode", "heath_brown"}, {"report", rep}}));
        }
        return kOk;
    }
    if (s.pair.size() != 2) throw UsageError("sieve: --pair takes two field descriptors");
    auto k1 = field_arg(s.pair[0]);
    auto k2 = field_arg(s.pair[1]);
    auto a1 = analyze_field(k1, g.classgroup());
    auto a2 = analyze_field(k2, g.classgroup());
    auto q = qualify_pair(a1, a2);
    if (q.conclusion != Outcome::qualified) {
        emit(g, envelope_text(g, "sieve", json{{"mode", "pair"}, {"qualification", q}}));
        return outcome_exit(q.conclusion);
    }
    p.u1 = s.u1 ? s.u1 : q.certificate->u1;
    p.f = s.f ? s.f : q.certificate->f;
    try {
        validate(p);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    if (p.u1 % q.certificate->f != q.certificate->d || p.f % q.certificate->f != 0)
        throw UsageError("sieve: u1 must lie in the certified class d mod f");
    // both units of K1 and the first unit of K2
    std::vector<SieveUnit> units;
    for (const auto& u : a1.class_group.units.units) units.push_back({a1.order, u});
    units.push_back({a2.order, a2.class_group.units.units.at(0)});
    if (units.size() > 3) units.resize(3);
    auto rep = run_sieve(p, compositum(a1.spec, a2.spec), units);
    auto ladder = density_ladder(rep, s.ladder_start ? s.ladder_start : std::max<u64>(100, p.X / 16));
    if (g.output == "csv") {
        emit(g, sieve_csv(rep) + "\n" + ladder_csv(ladder));
    } else {
        emit(g, envelope_text(g, "sieve",
                              json{{"mode", "pair"}, {"qualification", q}, {"report", rep}, {"ladder", ladder}}));
    }
    return kOk;
}

int cmd_certificate_verify(const Globals& g, const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open " + path);
    json doc;
    QualificationReport r;
    try {
        doc = json::parse(in);
        r = open_envelope(doc).get<QualificationReport>();
    } catch (const json::exception& e) {
        throw UsageError(std::string("certificate-verify: ") + e.what());
    }
    if (!r.certificate) throw UsageError("certificate-verify: report has no certificate");
    auto k1 = field_arg(r.fields[0].descriptor);
    auto k2 = field_arg(r.fields[1].descriptor);
    auto a1 = analyze_field(k1, g.classgroup());
    auto a2 = analyze_field(k2, g.classgroup());
    auto ctx = build_pair_context(a1.spec, a2.spec, a1.class_group, a2.class_group);
    auto checks = verify_certificate(ctx, *r.certificate);
    bool same_f = ctx.f == r.certificate->f;
    bool lift = r.certificate->u1 % ctx.f == r.certificate->d % ctx.f;
    bool ok = checks.all() && same_f && lift;
    emit(g, envelope_text(g, "certificate-verify",
                          json{{"certificate", *r.certificate},
                               {"recomputed", checks},
                               {"modulus_matches", same_f},
                               {"u1_lifts_d", lift},
                               {"valid", ok}}));
    return ok ? kOk : kRejected;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Euclidean ideal class hypotheses for pairs of cyclic fields"};
    Globals g;
    app.add_option("--output", g.output, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--out", g.out_file, "write to this file instead of stdout");
    app.add_option("--seed", g.seed, "seed for Pollard rho");
    app.add_option("--max-nodes", g.max_nodes, "enumeration node cap");
    app.require_subcommand(1);
    app.fallthrough();

    u64 n = 0, p = 0;
    auto* fields = app.add_subcommand("fields", "degree-p subfields of Q(zeta_n)");
    fields->add_option("n", n)->required();
    fields->add_option("p", p)->required();

    std::string d1, d2;
    auto* qualify = app.add_subcommand("qualify", "check the pair hypotheses");
    qualify->add_option("K1", d1, "level:gens or polynomial")->required();
    qualify->add_option("K2", d2)->required();

    std::vector<u64> primes;
    auto* corollary = app.add_subcommand("corollary", "all admissible pairs for primes p1 q1 p2 q2");
    corollary->add_option("primes", primes)->required()->expected(4);

    std::vector<std::string> pairs;
    auto* tables = app.add_subcommand("tables", "cubic subfields of Q(zeta_pq) with class numbers");
    tables->add_option("pairs", pairs, "p,q")->required();

    SieveArgs sa;
    auto* sieve = app.add_subcommand("sieve", "primes u1 mod f with (p - 1)/2 prime or semiprime");
    sieve->add_option("--u1", sa.u1);
    sieve->add_option("--f", sa.f);
    sieve->add_option("--X", sa.X);
    sieve->add_option("--a", sa.a);
    sieve->add_option("--b", sa.b);
    sieve->add_option("--epsilon", sa.epsilon);
    sieve->add_option("--pair", sa.pair, "two field descriptors")->expected(2);
    sieve->add_option("--ladder-start", sa.ladder_start);

    std::string report_path;
    auto* verify = app.add_subcommand("certificate-verify", "re-verify the certificate in a qualify report");
    verify->add_option("report", report_path)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*fields) return cmd_fields(g, n, p);
        if (*qualify) return cmd_qualify(g, d1, d2);
        if (*corollary) return cmd_corollary(g, primes);
        if (*tables) return cmd_tables(g, pairs);
        if (*sieve) return cmd_sieve(g, sa);
        if (*verify) return cmd_certificate_verify(g, report_path);
    } catch (const UsageError& e) {
        std::cerr << "eucl: " << e.what() << "\n";
        return kUsage;
    } catch (const ResourceError& e) {
        std::cerr << "eucl: undecided: " << e.what() << "\n";
        return kUndecided;
    } catch (const IndeterminateError& e) {
        std::cerr << "eucl: undecided: " << e.what() << "\n";
        return kUndecided;
    } catch (const InconsistencyError& e) {
        std::cerr << "eucl: internal error: " << e.what() << "\n";
        return kInternal;
    } catch (const std::invalid_argument& e) {
        std::cerr << "eucl: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
