#include "thermowit/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>
#include <unistd.h>

#include <json.hpp>

#include "thermowit/errors.hpp"
#include "thermowit/version.hpp"

namespace thermowit {

namespace {

nlohmann::json parse_json_or_throw(const std::string& text, const std::string& what) {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ValidationError(what + ": malformed JSON");
    return j;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

MatrixRecord parse_matrix_json(const std::string& text) {
    const nlohmann::json j = parse_json_or_throw(text, "matrix");
    if (!j.is_object() || !j.contains("dims") || !j.contains("re") || !j.contains("im"))
        throw ValidationError("matrix JSON must contain dims, re and im");

    MatrixRecord rec;
    try {
        rec.dims = j.at("dims").get<Dims>();
    } catch (const nlohmann::json::exception&) {
        throw ValidationError("matrix JSON: dims must be an integer array");
    }
    if (rec.dims.empty()) throw ValidationError("matrix JSON: dims must be nonempty");
    const long total = dims_product(rec.dims);
    const auto& re = j.at("re");
    const auto& im = j.at("im");
    if (!re.is_array() || !im.is_array() ||
        re.size() != static_cast<std::size_t>(total * total) || re.size() != im.size())
        throw ValidationError("matrix JSON: re/im must be arrays of length (prod dims)^2");

    rec.matrix.resize(total, total);
    for (long i = 0; i < total; ++i)
        for (long k = 0; k < total; ++k) {
            const auto idx = static_cast<std::size_t>(i * total + k);
            if (!re[idx].is_number() || !im[idx].is_number())
                throw ValidationError("matrix JSON: re/im entries must be numbers");
            rec.matrix(i, k) = Complex(re[idx].get<double>(), im[idx].get<double>());
        }
    return rec;
}

MatrixRecord load_matrix_json(const std::string& path) { return parse_matrix_json(read_file(path)); }

DensityMatrix load_density_matrix(const std::string& path) {
    MatrixRecord rec = load_matrix_json(path);
    return DensityMatrix(std::move(rec.matrix), std::move(rec.dims));
}

Hamiltonian load_hamiltonian(const std::string& path) {
    MatrixRecord rec = load_matrix_json(path);
    return Hamiltonian(std::move(rec.matrix), std::move(rec.dims));
}

std::string matrix_to_json(const Matrix& m, const Dims& dims) {
    std::ostringstream out;
    out << "{\"dims\":[";
    for (std::size_t i = 0; i < dims.size(); ++i) out << (i ? "," : "") << dims[i];
    out << "],\"re\":[";
    const Eigen::Index n = m.rows();
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index k = 0; k < n; ++k)
            out << (i + k ? "," : "") << fmt_g15(m(i, k).real());
    out << "],\"im\":[";
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index k = 0; k < n; ++k)
            out << (i + k ? "," : "") << fmt_g15(m(i, k).imag());
    out << "]}";
    return out.str();
}

std::string fmt_g15(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.15g", v);
    return buf;
}

void atomic_write_file(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path() && !target.parent_path().empty())
        fs::create_directories(target.parent_path());
    const fs::path tmp = target.string() + ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ValidationError("cannot write file: " + tmp.string());
        out << content;
        out.flush();
        if (!out) throw ValidationError("write failed: " + tmp.string());
    }
    fs::rename(tmp, target);
}

std::string csv_provenance(const std::string& cmd, const std::string& canonical_params) {
    return "# thermowit v" + std::string(kVersion) + " cmd=" + cmd + " params=" + canonical_params +
           "\n";
}

double parse_time_expr(const std::string& text) {
    static const std::regex kPiForm(
        R"(^\s*([0-9]*\.?[0-9]+(?:[eE][+-]?[0-9]+)?)?\s*\*?\s*pi\s*(?:/\s*([0-9]*\.?[0-9]+(?:[eE][+-]?[0-9]+)?))?\s*$)");
    std::smatch m;
    if (std::regex_match(text, m, kPiForm)) {
        const double a = m[1].matched ? std::stod(m[1].str()) : 1.0;
        const double b = m[2].matched ? std::stod(m[2].str()) : 1.0;
        if (b == 0.0) throw ValidationError("time expression divides by zero");
        return a * M_PI / b;
    }
    try {
        std::size_t pos = 0;
        const double v = std::stod(text, &pos);
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos != text.size()) throw ValidationError("");
        return v;
    } catch (...) {
        throw ValidationError("cannot parse time expression: " + text);
    }
}

}  // namespace thermowit
