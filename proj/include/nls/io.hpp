#ifndef NLS_IO_HPP
#define NLS_IO_HPP

#include <string>
#include <vector>

#include "nls/config.hpp"
#include "nls/potential.hpp"
#include "nls/scattering_data.hpp"
#include "nls/verify.hpp"

namespace nls {

// Deterministic writers: fixed %.17g formatting, no timestamps. Every file
// gets a JSON sidecar <name>.meta.json with the config hash, version and
// tolerances.

extern const char* kVersion;

std::string format_double(double v);

void write_field_csv(const std::string& path, const PotentialField& field);
void write_field_dat(const std::string& path, const PotentialField& field);  // gnuplot data
void write_scattering_csv(const std::string& path, const ScatteringData& sd);
void write_discrete_json(const std::string& path, const ScatteringData& sd);
void write_reports_json(const std::string& path, const std::vector<ResidualReport>& reports);
void write_sidecar(const std::string& data_path, const RunConfig& cfg);
void write_gnuplot_script(const std::string& path, const std::vector<std::string>& dat_files);

// Tabulated potential: CSV rows "x,re,im" on a uniform grid.
PotentialField load_potential_csv(const std::string& path, const BoundaryData& boundary, double time,
                                  double boundary_tol);

std::string time_tag(double t);  // "u_t<value>" naming

}  // namespace nls

#endif
