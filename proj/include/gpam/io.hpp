#pragma once

#include <string>

#include "gpam/solver.hpp"

namespace gpam {

// one row per node: x1, x2, value
void write_field_csv(const std::string& path, const Field& f);
Field read_field_csv(const std::string& path);

// binary trajectory layout: int64 n, int64 snapshot count M, float64 T,
// then M * n * n row-major doubles (native little-endian)
void write_trajectory_bin(const std::string& path, const Trajectory& t, int n, double T);
Trajectory read_trajectory_bin(const std::string& path);

// write to <path>.tmp then rename; keeps partially written files out of runs
void atomic_write_text(const std::string& path, const std::string& content);

// named analytic fields: "zero", "constant:<v>", "cos:<k1>,<k2>[,<amp>]",
// "file:<csv path>"
Field parse_field_spec(const TorusGrid& grid, const std::string& spec);

// hierarchy.json manifest {order, seed, delta, c_delta, sup norms per term}
// plus skeleton.bin and term<m>.bin trajectories under `dir`
void export_hierarchy(const std::string& dir, const struct TaylorHierarchy& hier,
                      std::uint64_t seed, double delta, double T);

} // namespace gpam
