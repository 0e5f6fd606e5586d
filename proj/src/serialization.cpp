#include "normalproj/serialization.hpp"

#include <bit>
#include <cstdint>
#include <fstream>
#include <sstream>

#include <openssl/evp.h>

#include "normalproj/errors.hpp"

namespace normalproj {

using nlohmann::json;

namespace {

constexpr const char* kMatrixRepFormat = "normalproj.matrixrep";
constexpr const char* kArrayEncoding = "base64-f64le-rowmajor";

template <typename T>
T get_field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw FormatError(std::string("field '") + key + "': " + e.what());
    }
}

std::string base64_encode(const std::vector<unsigned char>& bytes) {
    std::string out(4 * ((bytes.size() + 2) / 3), '\0');
    const int n = EVP_EncodeBlock(reinterpret_cast<unsigned char*>(out.data()), bytes.data(), static_cast<int>(bytes.size()));
    out.resize(static_cast<std::size_t>(n));
    return out;
}

std::vector<unsigned char> base64_decode(const std::string& text, std::size_t expected) {
    if (text.size() % 4 != 0) throw FormatError("base64 payload length is not a multiple of 4");
    std::vector<unsigned char> out(3 * text.size() / 4);
    const int n = EVP_DecodeBlock(out.data(), reinterpret_cast<const unsigned char*>(text.data()), static_cast<int>(text.size()));
    if (n < 0) throw FormatError("invalid base64 payload");
    std::size_t padding = 0;
    for (auto it = text.rbegin(); it != text.rend() && *it == '='; ++it) ++padding;
    if (static_cast<std::size_t>(n) - padding != expected) throw FormatError("array payload has the wrong byte length");
    out.resize(expected);
    return out;
}

std::string encode_matrix(const Eigen::MatrixXd& m) {
    std::vector<unsigned char> bytes;
    bytes.reserve(static_cast<std::size_t>(m.size()) * 8);
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            const auto bits = std::bit_cast<std::uint64_t>(m(r, c));
            for (int b = 0; b < 8; ++b) bytes.push_back(static_cast<unsigned char>((bits >> (8 * b)) & 0xffu));
        }
    }
    return base64_encode(bytes);
}

Eigen::MatrixXd decode_matrix(const std::string& text, Eigen::Index rows, Eigen::Index cols) {
    const auto bytes = base64_decode(text, static_cast<std::size_t>(rows * cols) * 8);
    Eigen::MatrixXd m(rows, cols);
    std::size_t pos = 0;
    for (Eigen::Index r = 0; r < rows; ++r) {
        for (Eigen::Index c = 0; c < cols; ++c) {
            std::uint64_t bits = 0;
            for (int b = 0; b < 8; ++b) bits |= static_cast<std::uint64_t>(bytes[pos++]) << (8 * b);
            m(r, c) = std::bit_cast<double>(bits);
        }
    }
    return m;
}

json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw FormatError("cannot write " + path.string());
    out << text << '\n';
}

}  // namespace

json to_json(const MultiDegree& d) { return d.to_vector(); }

MultiDegree multidegree_from_json(const json& j) {
    if (!j.is_array() || j.size() > kMaxBlocks) throw FormatError("multi-degree must be an array of at most 3 integers");
    std::vector<int> parts;
    for (const auto& x : j) {
        if (!x.is_number_integer()) throw FormatError("multi-degree components must be integers");
        parts.push_back(x.get<int>());
    }
    return MultiDegree(parts);
}

json to_json(SpaceKind kind, const Monomial& m) {
    return std::vector<int>(m.exps.begin(), m.exps.begin() + static_cast<std::ptrdiff_t>(num_vars(kind)));
}

Monomial monomial_from_json(SpaceKind kind, const json& j) {
    if (!j.is_array() || j.size() != num_vars(kind)) throw FormatError("monomial exponent array has the wrong length");
    Monomial m;
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number_integer() || j[i].get<int>() < 0) throw FormatError("monomial exponents must be non-negative integers");
        m.exps[i] = j[i].get<int>();
    }
    return m;
}

json to_json(const MultiHomogPoly& p) {
    return {{"kind", std::string(to_string(p.kind()))},
            {"degree", to_json(p.degree())},
            {"coeffs", std::vector<double>(p.coeffs().begin(), p.coeffs().end())}};
}

MultiHomogPoly poly_from_json(const json& j) {
    SpaceKind kind;
    try {
        kind = parse_space_kind(get_field<std::string>(j, "kind"));
    } catch (const DomainError& e) {
        throw FormatError(e.what());
    }
    const MultiDegree deg = multidegree_from_json(j.at("degree"));
    if (deg.size() != num_blocks(kind) || !deg.all_nonnegative()) throw FormatError("polynomial degree " + deg.str() + " is invalid");
    auto coeffs = get_field<std::vector<double>>(j, "coeffs");
    if (coeffs.size() != basis_size(kind, deg)) throw FormatError("polynomial coefficient count does not match its degree");
    return MultiHomogPoly(kind, deg, std::move(coeffs));
}

json to_json(const SurfaceParam& s) {
    json F = json::array();
    for (const auto& f : s.F) F.push_back(to_json(f));
    return {{"kind", std::string(to_string(s.kind))},
            {"degree", to_json(s.degree_d)},
            {"rational", !s.is_non_rational},
            {"F", F}};
}

SurfaceParam surface_from_json(const json& j) {
    SpaceKind kind;
    try {
        kind = parse_space_kind(get_field<std::string>(j, "kind"));
    } catch (const DomainError& e) {
        throw FormatError(e.what());
    }
    if (!j.contains("degree")) throw FormatError("missing field 'degree'");
    const MultiDegree deg = multidegree_from_json(j.at("degree"));
    const bool rational = get_field<bool>(j, "rational");
    if (!j.contains("F") || !j.at("F").is_array() || j.at("F").size() != 4) throw FormatError("field 'F' must hold four polynomials");
    std::array<MultiHomogPoly, 4> F;
    for (std::size_t i = 0; i < 4; ++i) F[i] = poly_from_json(j.at("F")[i]);
    return make_surface(kind, deg, std::move(F), !rational);
}

SurfaceParam load_surface(const std::filesystem::path& path) { return surface_from_json(read_json_file(path)); }

void save_surface(const SurfaceParam& s, const std::filesystem::path& path) { write_text_file(path, to_json(s).dump(2)); }

std::string surface_hash(const SurfaceParam& s) {
    const std::string canonical = to_json(s).dump();
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(canonical.data(), canonical.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
        throw Error("SHA-256 digest failed");
    }
    std::ostringstream os;
    os << std::hex;
    for (unsigned int i = 0; i < len; ++i) os << ((digest[i] >> 4) & 0xf) << (digest[i] & 0xf);
    return os.str();
}

void check_surface_hash(const MatrixRep& m, const SurfaceParam& s) {
    const std::string expected = surface_hash(s);
    if (m.meta.surface_hash != expected) {
        throw HashMismatch("matrix was built from surface " + m.meta.surface_hash + ", not " + expected);
    }
}

json to_json(const CongruenceMap& c) {
    json psi = json::array();
    for (const auto& p : c.psi) psi.push_back(to_json(p));
    return {{"kind", std::string(to_string(c.kind))},
            {"psi", psi},
            {"content_removed", to_json(c.kind, c.content_removed)},
            {"meta", {{"surface_hash", surface_hash(c.source)}, {"delta_degree", to_json(c.degree_delta)}}}};
}

json to_json(const MatrixRep& m) {
    json basis = json::array();
    for (const auto& mono : m.row_basis) basis.push_back(to_json(m.kind, mono));
    json arrays = json::array();
    for (const auto& mat : m.M) arrays.push_back(encode_matrix(mat));
    return {{"format", kMatrixRepFormat},
            {"version", kMatrixRepFormatVersion},
            {"kind", std::string(to_string(m.kind))},
            {"mu_nu", to_json(m.mu_nu)},
            {"rows", m.rows()},
            {"cols", m.cols()},
            {"row_basis", basis},
            {"meta",
             {{"surface_hash", m.meta.surface_hash},
              {"delta_degree", to_json(m.meta.delta_degree)},
              {"rank_tolerance_used", m.meta.rank_tolerance_used}}},
            {"encoding", kArrayEncoding},
            {"M", arrays}};
}

MatrixRep matrix_rep_from_json(const json& j) {
    if (get_field<std::string>(j, "format") != kMatrixRepFormat) throw FormatError("not a matrix representation file");
    const int version = get_field<int>(j, "version");
    if (version != kMatrixRepFormatVersion) throw FormatError("unsupported matrix representation version " + std::to_string(version));
    if (get_field<std::string>(j, "encoding") != kArrayEncoding) throw FormatError("unsupported array encoding");

    MatrixRep m;
    try {
        m.kind = parse_space_kind(get_field<std::string>(j, "kind"));
    } catch (const DomainError& e) {
        throw FormatError(e.what());
    }
    m.mu_nu = multidegree_from_json(j.at("mu_nu"));
    if (m.mu_nu.size() != num_blocks(m.kind) || !m.mu_nu.all_nonnegative()) {
        throw FormatError("mu_nu " + m.mu_nu.str() + " does not match kind " + std::string(to_string(m.kind)));
    }
    const auto rows = get_field<Eigen::Index>(j, "rows");
    const auto cols = get_field<Eigen::Index>(j, "cols");
    if (rows < 0 || cols < 0 || static_cast<std::size_t>(rows) != basis_size(m.kind, m.mu_nu)) {
        throw FormatError("row count does not match the degree slice");
    }
    const json& basis = j.at("row_basis");
    if (!basis.is_array() || basis.size() != static_cast<std::size_t>(rows)) throw FormatError("row_basis has the wrong length");
    for (const auto& mono : basis) m.row_basis.push_back(monomial_from_json(m.kind, mono));
    if (m.row_basis != enumerate_basis(m.kind, m.mu_nu)) throw FormatError("row_basis is not in canonical order");

    const json& meta = j.at("meta");
    m.meta.surface_hash = get_field<std::string>(meta, "surface_hash");
    m.meta.delta_degree = multidegree_from_json(meta.at("delta_degree"));
    m.meta.rank_tolerance_used = get_field<double>(meta, "rank_tolerance_used");

    const json& arrays = j.at("M");
    if (!arrays.is_array() || arrays.size() != 4) throw FormatError("field 'M' must hold four arrays");
    for (std::size_t i = 0; i < 4; ++i) m.M[i] = decode_matrix(arrays[i].get<std::string>(), rows, cols);
    return m;
}

void save_matrix_rep(const MatrixRep& m, const std::filesystem::path& path) { write_text_file(path, to_json(m).dump(1)); }

MatrixRep load_matrix_rep(const std::filesystem::path& path) {
    try {
        return matrix_rep_from_json(read_json_file(path));
    } catch (const json::exception& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
}

}  // namespace normalproj
