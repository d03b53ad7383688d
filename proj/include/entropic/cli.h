// cli.h
//
// Configuration, orchestration, persistence and reporting for the command
// line driver: c-function scans, beta scans, model fits, and the built-in
// validation suite.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "entropic/observables.h"

namespace entropic {

inline constexpr const char* kVersion = "1.0.0";

// raised for malformed configuration; the driver maps it to exit code 2
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PointOverride {
  int n_steps = 0;  // 0 = inherit
  int n_traj = 0;
};

struct RunConfig {
  int dim = 2;
  int extent = 0;
  int time_extent = 0;  // 0 -> ltau_ratio * extent
  int ltau_ratio = 0;   // 0 -> 8 in D=2, 4 in D=3
  int n_replicas = 2;
  double beta = 0.0;

  int l_min = 1;
  int l_max = 0;  // 0 -> extent
  int n_steps = 1000;
  int n_traj = 100;
  std::string protocol = "p1";      // p1 | p2
  std::string directions = "both";  // grow | shrink | both
  uint64_t seed = 1;
  int therm_sweeps = 1000;
  int sweeps_per_step = 1;
  int stage_resample = 0;
  int n_workers = 0;  // 0 -> hardware concurrency
  std::string out_dir = ".";
  std::string sys_model;               // empty -> fit2d_corrected / f_ads by dim
  std::vector<std::string> fit_models; // empty -> defaults by dim
  int exclude_first = 0;
  int exclude_last = 0;
  std::map<int, PointOverride> l_overrides;

  void set(const std::string& key, const std::string& value);  // ConfigError on bad input
  void finalize();                                             // resolve defaults + validate
  LatticeSpec lattice_spec() const;
  std::string canonical_text() const;  // sorted key=value lines
  std::string hash() const;            // FNV-1a 64 of the canonical text, hex
};

RunConfig load_config(const std::string& path);  // flat key=value file

// one scan row as written to points.csv
struct PointRow {
  double x = 0.0;
  int l = 0;
  double beta = 0.0;
  double c_value = 0.0;
  double stat_err = 0.0;
  double sys_err = 0.0;
  std::string direction;  // grow | shrink | combined
};

std::string points_csv(const std::vector<PointRow>& rows, const std::string& config_hash);
std::vector<PointRow> read_points_csv(const std::string& text, std::string* config_hash);

struct ScanResult {
  std::vector<PointRow> rows;
  std::vector<CFunctionPoint> combined;  // one per l, systematics applied
  EntropyCurve entropy;                  // filled when the scan starts at l=1
  std::string manifest_json;
  std::vector<std::string> errors;       // per-point failures (scan continues)
};

// full c-function scan over l at fixed beta
ScanResult run_cfun_scan(const RunConfig& config);
// scan over beta at fixed l (sys_err left 0: a single x cannot anchor the
// curve-based systematics)
ScanResult run_beta_scan(const RunConfig& config, const std::vector<double>& betas, int l,
                         bool with_dual);

int cmd_cfun(const RunConfig& config);
int cmd_beta_scan(const RunConfig& config, std::vector<double> betas, int l, bool with_dual);
int cmd_fit(const std::vector<std::string>& points_files, std::vector<std::string> model_names,
            const std::string& direction, int exclude_first, int exclude_last, bool force,
            const std::string& out_path);
int cmd_validate(const std::string& golden_path);
int cmd_golden(const std::string& out_path);

}  // namespace entropic
