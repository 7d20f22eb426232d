#pragma once

#include <string>
#include <vector>

#include "fads/montecarlo.hpp"
#include "fads/params.hpp"

// Run configuration in a flat dotted-key text format, e.g.
//
//   model.lambda = 1.0
//   model.sigma = 0:0.2,0.5:0.3     # piecewise t:value segments
//   experiment.n_paths = 100000
//   sweep.p = 0,0.25,0.5,0.75,1
//
// Lines starting with '#' are comments. Model keys are required; experiment,
// output and sweep keys have defaults. Parsing errors name the offending key.

namespace fads {

struct SweepAxes {
    std::vector<double> lambda;
    std::vector<double> p;
    std::vector<double> gamma;
    std::vector<double> horizon;
};

struct RunConfig {
    ModelParams model;
    ExperimentSpec experiment;  // experiment.params mirrors model
    std::string out_dir = ".";
    bool write_csv = true;
    bool write_json = true;
    SweepAxes sweep;  // empty axis = single point taken from the model
};

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

// Canonical text form; parse(serialize(cfg)) reproduces cfg exactly.
std::string serialize_config(const RunConfig& cfg);

}  // namespace fads
