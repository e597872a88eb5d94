#pragma once

#include <iosfwd>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "relspec/collapse.hpp"
#include "relspec/nesting.hpp"
#include "relspec/planting.hpp"
#include "relspec/rotation.hpp"
#include "relspec/spec2.hpp"
#include "relspec/types.hpp"

namespace relspec {

using json = nlohmann::json;

// Matrices serialize as {"dim": n, "re": [...], "im": [...]} row-major
// (rectangular ones carry "rows"/"cols" instead of "dim").
json to_json(const Matrix& m);
Matrix matrix_from_json(const json& j);

json to_json(const HermitianMatrix& h);
HermitianMatrix hermitian_from_json(const json& j);

json to_json(const Subspace& s);
Subspace subspace_from_json(const json& j);

// SpectrumSet: {"points": [{"re": x, "im": y}, ...], "conjugation_symmetric": flag}
json to_json(const SpectrumSet& s);
SpectrumSet spectrum_from_json(const json& j);

json to_json(const IntervalUnion& iv);
IntervalUnion interval_union_from_json(const json& j);

// QRegion: {"outer": {"center": ..., "radius": ...}, "gaps": [...]}
json to_json(const QRegion& q);

json to_json(const CollapseCertificate& c);
CollapseCertificate collapse_from_json(const json& j);

json to_json(const RotationResult& r);

json to_json(const NestState& s);
NestState nest_state_from_json(const json& j);
json to_json(const NestReport& r);

// Targets: {"sigma": [[a,b],...], "F": {"points": [...], "segments": [...], "disks": [...]}}
json to_json(const TargetSet& t);
TargetSet target_from_json(const json& j);
json to_json(const Theorem11Run& run);

/// Real symmetric matrix from CSV (one row per line, comma separated).
HermitianMatrix hermitian_from_csv(std::istream& in);

void write_json_file(const std::string& path, const json& j);
json read_json_file(const std::string& path);

}  // namespace relspec
