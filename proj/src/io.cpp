#include "dgf/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace dgf::io {

namespace {

using nlohmann::json;

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);  // binary keeps LF on every platform
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    return out;
}

void write_meta(std::ofstream& out, const MetaMap& meta) {
    for (const auto& [key, value] : meta) out << "# " << key << " = " << value << "\n";
}

json meta_object(const MetaMap& meta) {
    json obj = json::object();
    for (const auto& [key, value] : meta) obj[key] = value;
    return obj;
}

void dump_json(const json& doc, const std::string& path) {
    std::ofstream out = open_out(path);
    out << doc.dump(2) << "\n";
    if (!out) throw std::runtime_error("failed writing " + path);
}

double parse_double_field(const std::string& line, size_t& pos, const std::string& path) {
    const size_t next = line.find(',', pos);
    const size_t end = (next == std::string::npos) ? line.size() : next;
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(line.data() + pos, line.data() + end, value);
    if (ec != std::errc{} || ptr != line.data() + end)
        throw std::runtime_error("malformed numeric field in " + path + ": " + line);
    pos = (next == std::string::npos) ? line.size() : next + 1;
    return value;
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_evolution_csv(const lattice::EvolutionRecord& rec, const MetaMap& meta,
                         const std::string& path) {
    std::ofstream out = open_out(path);
    write_meta(out, meta);
    out << "z,m,re,im,intensity\n";
    for (int j = 0; j < rec.z_grid.size(); ++j) {
        for (int m = 0; m < rec.fields.cols(); ++m) {
            const Complex e = rec.fields(j, m);
            out << format_double(rec.z_grid[j]) << ',' << m << ','
                << format_double(e.real()) << ',' << format_double(e.imag()) << ','
                << format_double(std::norm(e)) << "\n";
        }
    }
    if (!out) throw std::runtime_error("failed writing " + path);
}

void write_evolution_json(const lattice::EvolutionRecord& rec, const MetaMap& meta,
                          const std::string& path) {
    json doc;
    doc["config"] = meta_object(meta);
    doc["schema"] = {"z", "m", "re", "im", "intensity"};
    json rows = json::array();
    for (int j = 0; j < rec.z_grid.size(); ++j) {
        for (int m = 0; m < rec.fields.cols(); ++m) {
            const Complex e = rec.fields(j, m);
            rows.push_back({rec.z_grid[j], m, e.real(), e.imag(), std::norm(e)});
        }
    }
    doc["rows"] = std::move(rows);
    dump_json(doc, path);
}

FieldTable read_field_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open input file: " + path);
    FieldTable table;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            const size_t eq = line.find('=');
            if (eq != std::string::npos) {
                std::string key = line.substr(1, eq - 1);
                std::string value = line.substr(eq + 1);
                const auto trim = [](std::string& s) {
                    const size_t b = s.find_first_not_of(' ');
                    const size_t e = s.find_last_not_of(' ');
                    s = (b == std::string::npos) ? "" : s.substr(b, e - b + 1);
                };
                trim(key);
                trim(value);
                table.meta[key] = value;
            }
            continue;
        }
        if (!header_seen) {  // column header
            header_seen = true;
            continue;
        }
        FieldSample s{};
        size_t pos = 0;
        s.z = parse_double_field(line, pos, path);
        s.m = static_cast<int>(parse_double_field(line, pos, path));
        s.re = parse_double_field(line, pos, path);
        s.im = parse_double_field(line, pos, path);
        s.intensity = parse_double_field(line, pos, path);
        table.rows.push_back(s);
    }
    return table;
}

void write_wigner_csv(const wigner::WignerGrid& grid, const MetaMap& meta,
                      const std::string& path) {
    std::ofstream out = open_out(path);
    write_meta(out, meta);
    out << "x,y,w\n";
    for (int i = 0; i < grid.x_axis.size(); ++i) {
        for (int j = 0; j < grid.y_axis.size(); ++j) {
            const double w = grid.values(i, j);
            out << format_double(grid.x_axis[i]) << ',' << format_double(grid.y_axis[j]) << ','
                << (std::isnan(w) ? "nan" : format_double(w)) << "\n";
        }
    }
    if (!out) throw std::runtime_error("failed writing " + path);
}

void write_wigner_json(const wigner::WignerGrid& grid, const MetaMap& meta,
                       const std::string& path) {
    json doc;
    doc["config"] = meta_object(meta);
    doc["schema"] = {"x", "y", "w"};
    json rows = json::array();
    for (int i = 0; i < grid.x_axis.size(); ++i) {
        for (int j = 0; j < grid.y_axis.size(); ++j) {
            const double w = grid.values(i, j);
            json row = {grid.x_axis[i], grid.y_axis[j], nullptr};
            if (!std::isnan(w)) row[2] = w;
            rows.push_back(std::move(row));
        }
    }
    doc["rows"] = std::move(rows);
    dump_json(doc, path);
}

void write_cat_csv(const cats::CatDecomposition& parts, const StateVector& state, double z,
                   const MetaMap& meta, const std::string& path) {
    {
        std::ofstream out = open_out(path);
        write_meta(out, meta);
        out << "z,m,re,im,intensity\n";
        for (int m = 0; m < state.size(); ++m) {
            out << format_double(z) << ',' << m << ',' << format_double(state[m].real()) << ','
                << format_double(state[m].imag()) << ',' << format_double(std::norm(state[m]))
                << "\n";
        }
        if (!out) throw std::runtime_error("failed writing " + path);
    }
    std::ofstream out = open_out(path + ".components.csv");
    write_meta(out, meta);
    out << "component,weight_re,weight_im,displacement_re,displacement_im,fock_index\n";
    for (size_t i = 0; i < parts.components.size(); ++i) {
        const auto& c = parts.components[i];
        out << i << ',' << format_double(c.weight.real()) << ',' << format_double(c.weight.imag())
            << ',' << format_double(c.displacement.real()) << ','
            << format_double(c.displacement.imag()) << ',' << c.fock_index << "\n";
    }
    if (!out) throw std::runtime_error("failed writing " + path + ".components.csv");
}

void write_cat_json(const cats::CatDecomposition& parts, const StateVector& state, double z,
                    const MetaMap& meta, const std::string& path) {
    json doc;
    doc["config"] = meta_object(meta);
    json comps = json::array();
    for (size_t i = 0; i < parts.components.size(); ++i) {
        const auto& c = parts.components[i];
        comps.push_back({{"component", i},
                         {"weight_re", c.weight.real()},
                         {"weight_im", c.weight.imag()},
                         {"displacement_re", c.displacement.real()},
                         {"displacement_im", c.displacement.imag()},
                         {"fock_index", c.fock_index}});
    }
    doc["components"] = std::move(comps);
    doc["state"]["schema"] = {"z", "m", "re", "im", "intensity"};
    json rows = json::array();
    for (int m = 0; m < state.size(); ++m)
        rows.push_back({z, m, state[m].real(), state[m].imag(), std::norm(state[m])});
    doc["state"]["rows"] = std::move(rows);
    dump_json(doc, path);
}

void write_compare_csv(const std::vector<double>& z_grid, const Eigen::MatrixXd& abs_diff,
                       const MetaMap& meta, const std::string& path) {
    std::ofstream out = open_out(path);
    write_meta(out, meta);
    out << "z,m,abs_diff\n";
    for (int j = 0; j < abs_diff.rows(); ++j)
        for (int m = 0; m < abs_diff.cols(); ++m)
            out << format_double(z_grid[static_cast<size_t>(j)]) << ',' << m << ','
                << format_double(abs_diff(j, m)) << "\n";
    if (!out) throw std::runtime_error("failed writing " + path);
}

void write_compare_json(const std::vector<double>& z_grid, const Eigen::MatrixXd& abs_diff,
                        const MetaMap& meta, const std::string& path) {
    json doc;
    doc["config"] = meta_object(meta);
    doc["schema"] = {"z", "m", "abs_diff"};
    json rows = json::array();
    for (int j = 0; j < abs_diff.rows(); ++j)
        for (int m = 0; m < abs_diff.cols(); ++m)
            rows.push_back({z_grid[static_cast<size_t>(j)], m, abs_diff(j, m)});
    doc["rows"] = std::move(rows);
    dump_json(doc, path);
}

}  // namespace dgf::io
