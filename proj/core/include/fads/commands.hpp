#pragma once

#include <string>

#include "fads/config.hpp"
#include "fads/verify.hpp"

// Command bodies behind the `fads` tool. Each writes its artifacts into
// cfg.out_dir and returns a process exit code. Config and I/O problems are
// thrown; the tool's main turns them into error messages.

namespace fads {

// Writes paths.csv (t,w,b,u,y,s), filter.csv (t,gamma,b0,upsilon0,mu0) and
// wealth.csv (t,pi,v,v_tilde) for experiment.n_paths sample paths. Multiple
// paths are concatenated in path order, t restarting at 0.
int cmd_simulate(const RunConfig& cfg);

// Writes value_report.json with both investors' closed-form and asymptotic
// values plus all excess quantities. Requires a zero rate curve.
int cmd_value(const RunConfig& cfg);

// Writes sweep.csv, one row per (lambda, p, gamma, T) tuple of the configured
// axes; missing axes collapse to the model's single point.
int cmd_sweep(const RunConfig& cfg);

// Runs the gate suite at the configured scale, prints one line per check,
// writes verify_report.json, and returns 0 only if every check passed.
int cmd_verify(const RunConfig& cfg);

}  // namespace fads
