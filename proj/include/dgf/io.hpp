#pragma once

#include <map>
#include <string>
#include <vector>

#include "dgf/cats.hpp"
#include "dgf/lattice.hpp"
#include "dgf/wigner.hpp"

// File emission for the command-line tool. CSV uses LF line endings, '#'
// metadata lines, one header row, and 17-significant-digit floats so that a
// write/read round trip is bit-identical. JSON mirrors the same schema.
namespace dgf::io {

using MetaMap = std::vector<std::pair<std::string, std::string>>;

std::string format_double(double v);

// Long format, one row per (z_j, m): header "z,m,re,im,intensity".
void write_evolution_csv(const lattice::EvolutionRecord& rec, const MetaMap& meta,
                         const std::string& path);
void write_evolution_json(const lattice::EvolutionRecord& rec, const MetaMap& meta,
                          const std::string& path);

struct FieldSample {
    double z;
    int m;
    double re;
    double im;
    double intensity;
};

struct FieldTable {
    std::map<std::string, std::string> meta;
    std::vector<FieldSample> rows;
};

FieldTable read_field_csv(const std::string& path);

// Header "x,y,w"; missing grid points are emitted as nan (CSV) / null (JSON).
void write_wigner_csv(const wigner::WignerGrid& grid, const MetaMap& meta,
                      const std::string& path);
void write_wigner_json(const wigner::WignerGrid& grid, const MetaMap& meta,
                       const std::string& path);

// Component table "component,weight_re,weight_im,displacement_re,displacement_im,fock_index"
// written next to the state table (suffix ".components.csv"); JSON carries both.
void write_cat_csv(const cats::CatDecomposition& parts, const StateVector& state, double z,
                   const MetaMap& meta, const std::string& path);
void write_cat_json(const cats::CatDecomposition& parts, const StateVector& state, double z,
                    const MetaMap& meta, const std::string& path);

// Per-(z, m) absolute differences, header "z,m,abs_diff".
void write_compare_csv(const std::vector<double>& z_grid, const Eigen::MatrixXd& abs_diff,
                       const MetaMap& meta, const std::string& path);
void write_compare_json(const std::vector<double>& z_grid, const Eigen::MatrixXd& abs_diff,
                        const MetaMap& meta, const std::string& path);

}  // namespace dgf::io
