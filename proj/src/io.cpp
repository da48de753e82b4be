#include "gpam/io.hpp"

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "gpam/hierarchy.hpp"

namespace gpam {

void write_field_csv(const std::string& path, const Field& f) {
    std::ostringstream out;
    out << "x1,x2,value\n";
    out.precision(17);
    const double h = f.grid.spacing();
    for (int i1 = 0; i1 < f.grid.n; ++i1)
        for (int i2 = 0; i2 < f.grid.n; ++i2)
            out << i1 * h << ',' << i2 * h << ',' << f(i1, i2) << '\n';
    atomic_write_text(path, out.str());
}

Field read_field_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_field_csv: cannot open " + path);
    std::string line;
    std::getline(in, line); // header
    std::vector<double> values;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto c1 = line.find(',');
        const auto c2 = line.find(',', c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos)
            throw std::runtime_error("read_field_csv: malformed row in " + path);
        values.push_back(std::stod(line.substr(c2 + 1)));
    }
    const int n = static_cast<int>(std::llround(std::sqrt(static_cast<double>(values.size()))));
    if (static_cast<std::size_t>(n) * n != values.size())
        throw std::runtime_error("read_field_csv: node count is not a square in " + path);
    Field f{TorusGrid(n)};
    f.v = std::move(values);
    return f;
}

void write_trajectory_bin(const std::string& path, const Trajectory& t, int n, double T) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw std::runtime_error("write_trajectory_bin: cannot open " + tmp);
        const std::int64_t n64 = n;
        const std::int64_t m64 = static_cast<std::int64_t>(t.snaps.size());
        out.write(reinterpret_cast<const char*>(&n64), sizeof(n64));
        out.write(reinterpret_cast<const char*>(&m64), sizeof(m64));
        out.write(reinterpret_cast<const char*>(&T), sizeof(T));
        for (const Field& f : t.snaps)
            out.write(reinterpret_cast<const char*>(f.v.data()),
                      static_cast<std::streamsize>(f.v.size() * sizeof(double)));
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("write_trajectory_bin: rename failed for " + path);
}

Trajectory read_trajectory_bin(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("read_trajectory_bin: cannot open " + path);
    std::int64_t n64 = 0, m64 = 0;
    double T = 0.0;
    in.read(reinterpret_cast<char*>(&n64), sizeof(n64));
    in.read(reinterpret_cast<char*>(&m64), sizeof(m64));
    in.read(reinterpret_cast<char*>(&T), sizeof(T));
    Trajectory t;
    const TorusGrid g(static_cast<int>(n64));
    for (std::int64_t s = 0; s < m64; ++s) {
        Field f(g);
        in.read(reinterpret_cast<char*>(f.v.data()),
                static_cast<std::streamsize>(f.v.size() * sizeof(double)));
        t.snaps.push_back(std::move(f));
        t.times.push_back(m64 > 1 ? T * s / (m64 - 1) : 0.0);
    }
    if (!in) throw std::runtime_error("read_trajectory_bin: truncated file " + path);
    return t;
}

void atomic_write_text(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw std::runtime_error("atomic_write_text: cannot open " + tmp);
        out << content;
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("atomic_write_text: rename failed for " + path);
}

Field parse_field_spec(const TorusGrid& grid, const std::string& spec) {
    if (spec == "zero" || spec.empty()) return Field(grid);
    const auto colon = spec.find(':');
    const std::string kind = spec.substr(0, colon);
    const std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
    if (kind == "constant") return field_constant(grid, std::stod(rest));
    if (kind == "cos") {
        int k1 = 0, k2 = 0;
        double amp = 1.0;
        std::istringstream ss(rest);
        char sep = 0;
        if (!(ss >> k1 >> sep >> k2)) throw std::invalid_argument("field spec: bad cos modes: " + spec);
        if (ss >> sep >> amp) { /* optional amplitude */ }
        return field_cos_mode(grid, k1, k2, amp);
    }
    if (kind == "file") {
        Field f = read_field_csv(rest);
        if (!(f.grid == grid)) throw std::invalid_argument("field spec: grid mismatch in " + rest);
        return f;
    }
    throw std::invalid_argument("field spec: unknown kind '" + spec + "'");
}

void export_hierarchy(const std::string& dir, const TaylorHierarchy& hier, std::uint64_t seed,
                      double delta, double T) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    const int n = hier.skeleton.snaps.front().grid.n;
    write_trajectory_bin((fs::path(dir) / "skeleton.bin").string(), hier.skeleton, n, T);
    for (int m = 1; m <= hier.order; ++m)
        write_trajectory_bin((fs::path(dir) / ("term" + std::to_string(m) + ".bin")).string(),
                             hier.terms[m - 1], n, T);
    nlohmann::json j;
    j["order"] = hier.order;
    j["seed"] = seed;
    j["delta"] = delta;
    j["c_delta"] = hier.c_delta;
    j["sup_norms"] = hier.term_sup_norms;
    atomic_write_text((fs::path(dir) / "hierarchy.json").string(), j.dump(2) + "\n");
}

} // namespace gpam
