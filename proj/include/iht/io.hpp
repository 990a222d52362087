#pragma once

#include "iht/experiment.hpp"
#include "iht/matrix.hpp"
#include "iht/rmt.hpp"
#include "iht/sampling.hpp"
#include "iht/solver.hpp"

#include <string>
#include <vector>

namespace iht {

/// Plain numeric CSV, one row per line, 17 significant digits on write so
/// that write-then-read round-trips exactly. Parse errors carry the 1-based
/// line number.
DenseMatrix read_matrix_csv(const std::string& path);
void write_matrix_csv(const std::string& path, const DenseMatrix& m);

/// Sampling sets serialize as a `# n1=<>,n2=<>` header plus `i,j` lines.
SamplingSet read_sampling_csv(const std::string& path);
void write_sampling_csv(const std::string& path, const SamplingSet& omega);

/// Solver trace: header `k,error_norm`.
void write_trace_csv(const std::string& path, const SolverTrace& trace);

/// Sweep cells: fixed column set, one row per (r,s) cell.
void write_cells_csv(const std::string& path, const std::vector<CellResult>& cells);

/// ESD sample: `eigenvalue` column plus a JSON sidecar carrying
/// {n,p,q,construction,seed} at path + ".json".
void write_esd_csv(const std::string& path, const EsdSample& sample);

}  // namespace iht
