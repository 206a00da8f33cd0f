#pragma once

#include <iosfwd>
#include <vector>

#include <nlohmann/json.hpp>

#include "zf/de_solver.hpp"
#include "zf/experiments.hpp"
#include "zf/forcing.hpp"
#include "zf/greedy.hpp"
#include "zf/hole_bound.hpp"
#include "zf/spectral.hpp"

namespace zf {

using nlohmann::json;

void to_json(json &j, const Force &f); // [forcer, forced]
void from_json(const json &j, Force &f);
void to_json(json &j, const ZSequenceRecord &r);
void from_json(const json &j, ZSequenceRecord &r);
void to_json(json &j, const ForcingOutcome &o);
/// {sequence, witnesses, forcing_set, status, seed, ...}
void to_json(json &j, const GreedyResult &r);
void to_json(json &j, const SolverConfig &c);
/// {d, system, x_k, x_end, upper_bound, diagnostics, solver}
void to_json(json &j, const PhasePortrait &p);
void to_json(json &j, const HoleBoundResult &r);
void to_json(json &j, const SpectralProfile &p);
void to_json(json &j, const ExperimentConfig &c);
void to_json(json &j, const SampleRecord &r);
void from_json(const json &j, SampleRecord &r);
/// Summary without the per-sample records.
json summary_json(const ExperimentReport &r);

void write_json_lines(std::ostream &os, const std::vector<SampleRecord> &records);
std::vector<SampleRecord> read_json_lines(std::istream &is);

} // namespace zf
