// io.hpp — JSON state and channel files. Writers are hand-formatted with
// 17-significant-digit numbers so matrices round-trip bit-exactly through
// text; readers parse with nlohmann::json and report which invariant a bad
// file violates.
#pragma once

#include <fstream>
#include <optional>

#include <json.hpp>

#include "channels.hpp"
#include "states.hpp"

namespace coherence_forge::io {

using nlohmann::json;

namespace detail {

inline std::string matrix_field(const complex_matrix& m, bool imaginary) {
    std::string out = "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (i) out += ",";
        out += "[";
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) out += ",";
            out += format_double(imaginary ? m(i, j).imag() : m(i, j).real());
        }
        out += "]";
    }
    out += "]";
    return out;
}

inline complex_matrix matrix_from_parts(const json& re, const json& im,
                                        const std::string& context) {
    if (!re.is_array() || !im.is_array() || re.size() != im.size())
        throw validation_error(context + ": re/im must be arrays of equal shape");
    const std::size_t rows = re.size();
    if (rows == 0) throw validation_error(context + ": empty matrix");
    const std::size_t cols = re[0].size();
    complex_matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (!re[i].is_array() || re[i].size() != cols || im[i].size() != cols)
            throw validation_error(context + ": ragged matrix rows");
        for (std::size_t j = 0; j < cols; ++j)
            m(i, j) = cx(re[i][j].get<double>(), im[i][j].get<double>());
    }
    return m;
}

}  // namespace detail

inline std::string state_to_json(const density_matrix& rho) {
    std::string out = "{\"dim\":" + std::to_string(rho.dim());
    out += ",\"re\":" + detail::matrix_field(rho.matrix(), false);
    out += ",\"im\":" + detail::matrix_field(rho.matrix(), true);
    out += "}";
    return out;
}

inline std::string pure_to_json(const pure_state& psi) {
    std::string out = "{\"dim\":" + std::to_string(psi.dim());
    out += ",\"amp_re\":[";
    for (std::size_t i = 0; i < psi.dim(); ++i) {
        if (i) out += ",";
        out += format_double(psi.amplitudes()[i].real());
    }
    out += "],\"amp_im\":[";
    for (std::size_t i = 0; i < psi.dim(); ++i) {
        if (i) out += ",";
        out += format_double(psi.amplitudes()[i].imag());
    }
    out += "]}";
    return out;
}

inline std::string channel_to_json(const kraus_channel& channel) {
    std::string out = "{\"d_in\":" + std::to_string(channel.d_in());
    out += ",\"d_out\":" + std::to_string(channel.d_out());
    out += ",\"kraus\":[";
    for (std::size_t l = 0; l < channel.kraus_ops().size(); ++l) {
        if (l) out += ",";
        out += "{\"re\":" + detail::matrix_field(channel.kraus_ops()[l], false);
        out += ",\"im\":" + detail::matrix_field(channel.kraus_ops()[l], true) + "}";
    }
    out += "]}";
    return out;
}

inline json parse_document(const std::string& text, const std::string& context) {
    json doc = json::parse(text, nullptr, false);
    if (doc.is_discarded())
        throw validation_error(context + ": not valid JSON");
    return doc;
}

// Density-matrix file {"dim", "re", "im"}; construction re-validates the
// hermiticity/trace/positivity invariants and the error says which failed.
inline density_matrix parse_state(const std::string& text) {
    const json doc = parse_document(text, "state file");
    if (!doc.contains("dim") || !doc.contains("re") || !doc.contains("im"))
        throw validation_error("state file: need fields dim, re, im");
    const std::size_t dim = doc["dim"].get<std::size_t>();
    complex_matrix m = detail::matrix_from_parts(doc["re"], doc["im"], "state file");
    if (m.rows() != dim || m.cols() != dim)
        throw validation_error("state file: matrix shape differs from dim");
    try {
        return density_matrix(std::move(m));
    } catch (const validation_error& e) {
        throw validation_error(std::string("state file: ") + e.what());
    }
}

inline pure_state parse_pure(const std::string& text) {
    const json doc = parse_document(text, "pure-state file");
    if (!doc.contains("dim") || !doc.contains("amp_re") || !doc.contains("amp_im"))
        throw validation_error("pure-state file: need fields dim, amp_re, amp_im");
    const std::size_t dim = doc["dim"].get<std::size_t>();
    const json& re = doc["amp_re"];
    const json& im = doc["amp_im"];
    if (re.size() != dim || im.size() != dim)
        throw validation_error("pure-state file: amplitude count differs from dim");
    std::vector<cx> amps(dim);
    for (std::size_t i = 0; i < dim; ++i)
        amps[i] = cx(re[i].get<double>(), im[i].get<double>());
    try {
        return pure_state(dim, std::move(amps));
    } catch (const validation_error& e) {
        throw validation_error(std::string("pure-state file: ") + e.what());
    }
}

// Accepts either representation and yields a density matrix.
inline density_matrix parse_any_state(const std::string& text) {
    const json doc = parse_document(text, "state file");
    if (doc.contains("amp_re")) return density_matrix::from_pure(parse_pure(text));
    return parse_state(text);
}

inline kraus_channel parse_channel(const std::string& text) {
    const json doc = parse_document(text, "channel file");
    if (!doc.contains("d_in") || !doc.contains("d_out") || !doc.contains("kraus"))
        throw validation_error("channel file: need fields d_in, d_out, kraus");
    const std::size_t d_in = doc["d_in"].get<std::size_t>();
    const std::size_t d_out = doc["d_out"].get<std::size_t>();
    if (!doc["kraus"].is_array() || doc["kraus"].empty())
        throw validation_error("channel file: kraus must be a nonempty array");
    std::vector<complex_matrix> ops;
    for (const json& op : doc["kraus"]) {
        if (!op.contains("re") || !op.contains("im"))
            throw validation_error("channel file: each Kraus entry needs re and im");
        ops.push_back(detail::matrix_from_parts(op["re"], op["im"], "channel file"));
    }
    try {
        return kraus_channel(d_in, d_out, std::move(ops));
    } catch (const validation_error& e) {
        throw validation_error(std::string("channel file: ") + e.what());
    }
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw validation_error("cannot open file: " + path);
    return std::string(std::istreambuf_iterator<char>(in),
                       std::istreambuf_iterator<char>());
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw validation_error("cannot write file: " + path);
    out << content;
}

inline density_matrix read_state_file(const std::string& path) {
    return parse_any_state(read_text_file(path));
}

inline kraus_channel read_channel_file(const std::string& path) {
    return parse_channel(read_text_file(path));
}

}  // namespace coherence_forge::io
