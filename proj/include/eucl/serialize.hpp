#pragma once

// JSON forms of reports. Residues mod f are decimal strings; every document
// carries "schema": 1.

#include "eucl/certificate.hpp"
#include "eucl/sieve.hpp"

#include "json.hpp"

#include <string>

namespace eucl {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;

void to_json(json& j, HcfStatus s);
void from_json(const json& j, HcfStatus& s);
void to_json(json& j, Outcome o);
void from_json(const json& j, Outcome& o);
void to_json(json& j, HalfType t);
void from_json(const json& j, HalfType& t);

void to_json(json& j, const FieldSummary& x);
void from_json(const json& j, FieldSummary& x);
void to_json(json& j, const CertificateChecks& x);
void from_json(const json& j, CertificateChecks& x);
void to_json(json& j, const ResidueClassCertificate& x);
void from_json(const json& j, ResidueClassCertificate& x);
void to_json(json& j, const QualificationReport& x);
void from_json(const json& j, QualificationReport& x);
void to_json(json& j, const CorollaryReport& x);
void from_json(const json& j, CorollaryReport& x);
void to_json(json& j, const TableRow& x);
void from_json(const json& j, TableRow& x);
void to_json(json& j, const SieveParams& x);
void from_json(const json& j, SieveParams& x);
void to_json(json& j, const SieveRecord& x);
void from_json(const json& j, SieveRecord& x);
void to_json(json& j, const SieveReport& x);
void from_json(const json& j, SieveReport& x);
void to_json(json& j, const LadderRung& x);
void from_json(const json& j, LadderRung& x);

// {"schema": 1, "command": ..., "result": ...}
json envelope(const std::string& command, json result);
// Checks the schema field and returns "result".
json open_envelope(const json& doc);

// Two-space indented text with a trailing newline.
std::string dump(const json& j);

}  // namespace eucl
