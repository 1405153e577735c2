#include "bd3/statefile.hpp"

#include "bd3/errors.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

namespace bd3 {

namespace {

using nlohmann::json;

json parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error(IoCode::File, "cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw io_error(IoCode::Parse, "malformed JSON in '" + path + "': " + e.what());
    }
    return j;
}

void check_version(const json& j, const std::string& path) {
    if (!j.contains("format_version") || !j["format_version"].is_number_integer())
        throw io_error(IoCode::Format, "missing format_version in '" + path + "'");
    if (j["format_version"].get<int>() != 1)
        throw io_error(IoCode::Version, "unsupported format_version " +
                                            std::to_string(j["format_version"].get<int>()) + " in '" + path + "'");
}

double require_number(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number()) throw io_error(IoCode::Format, std::string("missing numeric '") + key + "'");
    return j[key].get<double>();
}

Mat parse_basis(const json& jb) {
    if (!jb.is_array() || jb.size() != 6) throw io_error(IoCode::Format, "basis must be a 6x6 array");
    Mat m(6, 6);
    for (int r = 0; r < 6; ++r) {
        const auto& row = jb[r];
        if (!row.is_array() || row.size() != 6) throw io_error(IoCode::Format, "basis must be a 6x6 array");
        for (int c = 0; c < 6; ++c) m(r, c) = {require_number(row[c], "re"), require_number(row[c], "im")};
    }
    if (unitarity_defect(m) > 1e-10) throw io_error(IoCode::Format, "basis matrix is not unitary");
    return m;
}

void write_file(const std::string& path, const std::string& body) {
    std::ofstream out(path);
    if (!out) throw io_error(IoCode::File, "cannot write '" + path + "'");
    out << body;
    if (!out) throw io_error(IoCode::File, "write failed for '" + path + "'");
}

std::string basis_json(const Mat& m) {
    std::string s = "[\n";
    for (int r = 0; r < 6; ++r) {
        s += "    [";
        for (int c = 0; c < 6; ++c) {
            s += json_complex(std::real(m(r, c)), std::imag(m(r, c)));
            if (c != 5) s += ", ";
        }
        s += r == 5 ? "]\n" : "],\n";
    }
    s += "  ]";
    return s;
}

std::string amplitudes_json(const std::vector<CITerm>& terms) {
    std::string s = "[\n";
    for (size_t i = 0; i < terms.size(); ++i) {
        const auto& t = terms[i];
        s += "    {\"indices\": [" + std::to_string(t.orbitals[0] + 1) + ", " + std::to_string(t.orbitals[1] + 1) +
             ", " + std::to_string(t.orbitals[2] + 1) + "], \"re\": " + format_sig(std::real(t.coeff), 17) +
             ", \"im\": " + format_sig(std::imag(t.coeff), 17) + "}";
        s += (i + 1 == terms.size()) ? "\n" : ",\n";
    }
    s += "  ]";
    return s;
}

std::string metadata_json(const std::map<std::string, std::string>& metadata) {
    json j(metadata);
    return j.dump();
}

} // namespace

std::string format_sig(double x, int digits) {
    if (x == 0.0) x = 0.0; // normalize -0
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", digits, x);
    return buf;
}

std::string json_complex(double re, double im) {
    return "{\"re\": " + format_sig(re, 17) + ", \"im\": " + format_sig(im, 17) + "}";
}

Trivector load_state(const std::string& path) {
    json j = parse_file(path);
    check_version(j, path);
    if (!j.contains("amplitudes") || !j["amplitudes"].is_array())
        throw io_error(IoCode::Format, "missing amplitudes array in '" + path + "'");

    Trivector t(6, 3);
    std::array<bool, 20> seen{};
    for (const auto& entry : j["amplitudes"]) {
        if (!entry.contains("indices") || !entry["indices"].is_array() || entry["indices"].size() != 3)
            throw io_error(IoCode::Format, "amplitude entry without a 3-index configuration");
        std::array<int, 3> idx;
        for (int k = 0; k < 3; ++k) {
            if (!entry["indices"][k].is_number_integer())
                throw io_error(IoCode::Format, "non-integer configuration index");
            idx[k] = entry["indices"][k].get<int>() - 1;
            if (idx[k] < 0 || idx[k] > 5) throw io_error(IoCode::Format, "configuration index out of range 1..6");
        }
        if (!(idx[0] < idx[1] && idx[1] < idx[2]))
            throw io_error(IoCode::Format, "unsorted configuration indices");
        const int rank_idx = comb_rank(idx, 6);
        if (seen[rank_idx]) throw io_error(IoCode::Format, "duplicate configuration");
        seen[rank_idx] = true;
        t[rank_idx] = {require_number(entry, "re"), require_number(entry, "im")};
    }

    if (j.contains("basis")) {
        Mat b = parse_basis(j["basis"]);
        Trivector rotated(6, 3);
        std::array<int, 3> idx;
        for (int r = 0; r < t.size(); ++r) {
            if (t[r] == cplx{}) continue;
            comb_unrank(r, 6, 3, idx);
            rotated += wedge_cols(b, idx) * t[r];
        }
        return rotated;
    }
    return t;
}

void save_state(const Trivector& t, const std::string& path,
                const std::map<std::string, std::string>& metadata) {
    std::vector<CITerm> terms;
    std::array<int, 3> idx;
    for (int r = 0; r < t.size(); ++r) {
        if (t[r] == cplx{}) continue;
        comb_unrank(r, 6, 3, idx);
        terms.push_back({idx, t[r]});
    }
    std::string body = "{\n  \"format_version\": 1,\n  \"amplitudes\": " + amplitudes_json(terms);
    if (!metadata.empty()) body += ",\n  \"metadata\": " + metadata_json(metadata);
    body += "\n}\n";
    write_file(path, body);
}

void save_expansion(const CIExpansion& e, const std::string& path,
                    const std::map<std::string, std::string>& metadata) {
    std::map<std::string, std::string> meta = metadata;
    meta["shape"] = shape_name(e.shape);
    std::string labels;
    for (int i = 0; i < 6; ++i) labels += e.basis.labels[i] + (i == 5 ? "" : ",");
    meta["labels"] = labels;
    std::string body = "{\n  \"format_version\": 1,\n  \"amplitudes\": " + amplitudes_json(e.terms) +
                       ",\n  \"basis\": " + basis_json(e.basis.cols) + ",\n  \"metadata\": " + metadata_json(meta) +
                       "\n}\n";
    write_file(path, body);
}

ThreeQubitState load_qubit_state(const std::string& path) {
    json j = parse_file(path);
    check_version(j, path);
    if (!j.contains("amplitudes") || !j["amplitudes"].is_array())
        throw io_error(IoCode::Format, "missing amplitudes array in '" + path + "'");

    ThreeQubitState q;
    std::array<bool, 8> seen{};
    for (const auto& entry : j["amplitudes"]) {
        if (!entry.contains("bits") || !entry["bits"].is_string())
            throw io_error(IoCode::Format, "amplitude entry without a bits string");
        const std::string bits = entry["bits"].get<std::string>();
        if (bits.size() != 3 || bits.find_first_not_of("01") != std::string::npos)
            throw io_error(IoCode::Format, "bits must be three characters of 0/1");
        const int b1 = bits[0] - '0', b2 = bits[1] - '0', b3 = bits[2] - '0';
        const int slot = b1 + 2 * b2 + 4 * b3;
        if (seen[slot]) throw io_error(IoCode::Format, "duplicate configuration");
        seen[slot] = true;
        q(b1, b2, b3) = {require_number(entry, "re"), require_number(entry, "im")};
    }
    return q;
}

void save_qubit_state(const ThreeQubitState& q, const std::string& path) {
    std::string body = "{\n  \"format_version\": 1,\n  \"amplitudes\": [\n";
    bool first = true;
    for (int b3 = 0; b3 < 2; ++b3)
        for (int b2 = 0; b2 < 2; ++b2)
            for (int b1 = 0; b1 < 2; ++b1) {
                const cplx z = q(b1, b2, b3);
                if (z == cplx{}) continue;
                if (!first) body += ",\n";
                first = false;
                body += "    {\"bits\": \"" + std::to_string(b1) + std::to_string(b2) + std::to_string(b3) +
                        "\", \"re\": " + format_sig(std::real(z), 17) + ", \"im\": " + format_sig(std::imag(z), 17) +
                        "}";
            }
    body += "\n  ]\n}\n";
    write_file(path, body);
}

namespace {

double margin_uniform(SplitMix64& rng, double lo, double hi) { return lo + (hi - lo) * rng.uniform01(); }

cplx unit_phase(SplitMix64& rng) { return std::polar(1.0, 6.283185307179586 * rng.uniform01()); }

Trivector from_rows(const Mat& basis, const std::vector<std::array<int, 3>>& rows, const std::vector<cplx>& coeff) {
    Trivector t(6, 3);
    for (size_t i = 0; i < rows.size(); ++i) t += wedge_cols(basis, rows[i]) * coeff[i];
    t *= 1.0 / t.norm();
    return t;
}

} // namespace

Trivector random_state(std::uint64_t seed, const std::optional<TypeTag>& tag) {
    SplitMix64 rng(seed);
    if (!tag) return random_trivector(rng);

    const Mat u = rng.haar_unitary(6);
    switch (*tag) {
        case TypeTag::Type1:
            return from_rows(u, {{0, 1, 2}}, {1.0});
        case TypeTag::Type2a:
        case TypeTag::LowRank: {
            const double a1 = std::sqrt(margin_uniform(rng, 0.55, 0.8));
            const double a2 = std::sqrt(1.0 - a1 * a1);
            return from_rows(u, {{0, 1, 2}, {0, 3, 4}}, {a1 * unit_phase(rng), a2 * unit_phase(rng)});
        }
        case TypeTag::Type2b:
        case TypeTag::OrthoGHZ: {
            const double a = std::sqrt(margin_uniform(rng, 0.6, 0.85));
            const double c = std::sqrt(1.0 - a * a);
            return from_rows(u, {{0, 1, 2}, {3, 4, 5}}, {a * unit_phase(rng), c * unit_phase(rng)});
        }
        case TypeTag::Type3a:
        case TypeTag::OrthoW: {
            std::vector<cplx> b(3);
            double n2 = 0.0;
            for (auto& z : b) {
                const double m = margin_uniform(rng, 0.4, 1.0);
                z = m * unit_phase(rng);
                n2 += m * m;
            }
            (void)n2;
            return from_rows(u, {{1, 2, 3}, {0, 2, 4}, {0, 1, 5}}, b);
        }
        case TypeTag::Type3b: {
            std::vector<cplx> c(3);
            for (auto& z : c) z = margin_uniform(rng, 0.4, 1.0) * unit_phase(rng);
            return from_rows(u, {{0, 1, 2}, {2, 3, 4}, {3, 4, 5}}, c);
        }
        case TypeTag::CIS: {
            std::vector<cplx> c(4);
            for (auto& z : c) z = margin_uniform(rng, 0.25, 1.0) * unit_phase(rng);
            return from_rows(u, {{0, 1, 2}, {1, 2, 3}, {0, 2, 4}, {0, 1, 5}}, c);
        }
        case TypeTag::CID: {
            std::vector<cplx> c(4);
            for (auto& z : c) z = margin_uniform(rng, 0.25, 1.0) * unit_phase(rng);
            return from_rows(u, {{0, 1, 2}, {0, 4, 5}, {1, 3, 5}, {2, 3, 4}}, c);
        }
    }
    throw std::invalid_argument("random_state: unknown class tag");
}

} // namespace bd3
