#pragma once

// Subcommand implementations behind the CLI front end. Each writes its data
// files under cfg.out_dir (created on demand) and throws typed errors:
// ConfigError, IoError, or the numeric-contract exceptions from errors.hpp.

#include <iosfwd>

#include "chiralchain/config.hpp"

namespace chiralchain::commands {

// stark_map.csv: x,m,level_index,energy_over_B
void stark_map(const RunConfig& cfg);

// coefficients.csv: x,C1,C2,C3,C4,Re_Cd1,Im_Cd1
// couplings.csv:    x,r_nm,Jxy_GHz,D_GHz,Jz_GHz,h_GHz,Jtilde_GHz,theta_rad
void couplings(const RunConfig& cfg);

// phase_grid.csv: x,r_nm,jz_ratio,h_ratio,label
// boundary.csv:   x,r_nm
void phase_diagram(const RunConfig& cfg);

// correlations.csv:     i,j,re,im,frame   (effective rows, then laboratory)
// structure_factor.csv: q_inv_nm,S
void chain(const RunConfig& cfg);

// Three-line report (or a JSON object) on `out`.
void noise(const RunConfig& cfg, bool as_json, std::ostream& out);

} // namespace chiralchain::commands
