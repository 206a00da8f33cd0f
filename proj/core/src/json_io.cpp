#include "zf/json_io.hpp"

#include <istream>
#include <ostream>
#include <string>

namespace zf {

void to_json(json &j, const Force &f) { j = json::array({f.forcer, f.forced}); }

void from_json(const json &j, Force &f) {
    f.forcer = j.at(0).get<Vertex>();
    f.forced = j.at(1).get<Vertex>();
}

void to_json(json &j, const ZSequenceRecord &r) {
    j = json{{"sequence", r.sequence}, {"witnesses", r.witnesses}, {"forcing_set", r.forcing_set}};
}

void from_json(const json &j, ZSequenceRecord &r) {
    j.at("sequence").get_to(r.sequence);
    j.at("witnesses").get_to(r.witnesses);
    if (j.contains("forcing_set")) j.at("forcing_set").get_to(r.forcing_set);
}

void to_json(json &j, const ForcingOutcome &o) {
    j = json{{"final_black", o.final_black}, {"forces", o.forces}, {"stalled", o.stalled}};
}

void to_json(json &j, const GreedyResult &r) {
    j = r.record;
    j["status"] = to_string(r.status);
    j["seed"] = r.seed;
    j["forcing_set_size"] = r.forcing_set_size();
    j["multi_component"] = r.multi_component;
    j["insertions"] = r.insertions;
    j["algorithm_sequence"] = r.algorithm_sequence;
}

void to_json(json &j, const SolverConfig &c) {
    j = json{{"rtol", c.rtol}, {"atol", c.atol}, {"max_step", c.max_step}, {"event_tol", c.event_tol}};
}

void to_json(json &j, const PhasePortrait &p) {
    j = json{{"d", p.d},
             {"system", p.system == DeSystem::plain ? "plain" : "smart"},
             {"x_k", p.boundaries},
             {"x_end", p.x_end},
             {"upper_bound", p.upper_bound},
             {"phases", p.phases.size()},
             {"diagnostics", p.diagnostics},
             {"solver", p.config}};
}

void to_json(json &j, const HoleBoundResult &r) {
    j = json{{"d", r.d},
             {"a", r.a_threshold},
             {"b", r.b_at_threshold},
             {"f", r.f_at_threshold},
             {"lower_bound", r.lower_bound}};
}

void to_json(json &j, const SpectralProfile &p) {
    j = json{{"n", p.n}, {"d", p.d}, {"lambda", p.lambda}, {"source", to_string(p.source)}};
}

void to_json(json &j, const ExperimentConfig &c) {
    j = json{{"d", c.d},
             {"n", c.n},
             {"samples", c.samples},
             {"algorithm", to_string(c.algorithm)},
             {"base_seed", c.base_seed},
             {"threads", c.threads},
             {"restart_on_stall", c.restart_on_stall},
             {"compare_ode", c.compare_ode}};
    if (c.compare_phase) j["compare_phase"] = *c.compare_phase;
}

void to_json(json &j, const SampleRecord &r) {
    j = json{{"seed", r.seed},
             {"n", r.n},
             {"d", r.d},
             {"algorithm", to_string(r.algorithm)},
             {"restart_on_stall", r.restart_on_stall},
             {"forcing_set_size", r.forcing_set_size},
             {"status", r.status},
             {"attempts", r.attempts},
             {"components", r.components},
             {"witnesses_valid", r.witnesses_valid},
             {"insertions", r.insertions},
             {"runtime_ms", r.runtime_ms}};
    if (!r.sup_distance.empty()) j["sup_distance"] = r.sup_distance;
}

void from_json(const json &j, SampleRecord &r) {
    j.at("seed").get_to(r.seed);
    j.at("n").get_to(r.n);
    j.at("d").get_to(r.d);
    r.algorithm = parse_algorithm(j.at("algorithm").get<std::string>());
    r.restart_on_stall = j.value("restart_on_stall", false);
    j.at("forcing_set_size").get_to(r.forcing_set_size);
    j.at("status").get_to(r.status);
    r.attempts = j.value("attempts", 0);
    r.components = j.value("components", 0);
    r.witnesses_valid = j.value("witnesses_valid", false);
    r.insertions = j.value("insertions", 0L);
    r.runtime_ms = j.value("runtime_ms", 0.0);
    if (j.contains("sup_distance")) j.at("sup_distance").get_to(r.sup_distance);
}

json summary_json(const ExperimentReport &r) {
    json j{{"config", r.config},
           {"completed", r.records.size() - static_cast<std::size_t>(r.generation_failures)},
           {"generation_failures", r.generation_failures},
           {"mean_fraction", r.mean_fraction},
           {"stddev_fraction", r.stddev_fraction},
           {"mean_size", r.mean_size}};
    j["ode_bound"] = r.ode_bound ? json(*r.ode_bound) : json(nullptr);
    if (!r.sup_distance_max.empty()) {
        j["sup_distance_mean"] = r.sup_distance_mean;
        j["sup_distance_max"] = r.sup_distance_max;
    }
    return j;
}

void write_json_lines(std::ostream &os, const std::vector<SampleRecord> &records) {
    for (const auto &r : records) os << json(r).dump() << '\n';
}

std::vector<SampleRecord> read_json_lines(std::istream &is) {
    std::vector<SampleRecord> out;
    std::string line;
    while (std::getline(is, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        out.push_back(json::parse(line).get<SampleRecord>());
    }
    return out;
}

} // namespace zf
