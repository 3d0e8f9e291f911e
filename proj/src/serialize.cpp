#include "pwf/serialize.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace pwf {

using ordered_json = nlohmann::ordered_json;

std::string to_json(const TestFunction& f) {
    ordered_json j;
    j["schema"] = 1;
    j["seed"] = f.seed;
    j["jumps"] = ordered_json::array();
    for (const auto& jp : f.singular.jumps) {
        ordered_json o;
        o["xi"] = jp.xi;
        o["magnitudes"] = jp.magnitudes;
        j["jumps"].push_back(o);
    }
    ordered_json smooth;
    smooth["d1"] = f.smooth.d1;
    smooth["R"] = f.smooth.R;
    smooth["coeffs"] = ordered_json::array();
    {
        ordered_json c0;
        c0["k"] = 0;
        c0["re"] = f.smooth.f0;
        c0["im"] = 0.0;
        smooth["coeffs"].push_back(c0);
    }
    for (long k = 1; k <= f.smooth.range(); ++k) {
        ordered_json c;
        c["k"] = k;
        c["re"] = f.smooth.at(k).real();
        c["im"] = f.smooth.at(k).imag();
        smooth["coeffs"].push_back(c);
    }
    j["smooth"] = smooth;
    return j.dump(2) + "\n";
}

TestFunction test_function_from_json(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("test function: invalid JSON: ") + e.what());
    }
    if (!j.contains("schema") || j["schema"].get<int>() != 1)
        throw ConfigError("test function: unsupported schema (expected 1)");
    TestFunction f;
    f.seed = j.value("seed", std::uint64_t{0});
    const auto& smooth = j.at("smooth");
    f.smooth.d1 = smooth.at("d1").get<int>();
    f.smooth.R = smooth.at("R").get<double>();
    f.singular.d1 = f.smooth.d1;
    for (const auto& o : j.at("jumps")) {
        SingularPart::Jump jp;
        jp.xi = o.at("xi").get<double>();
        jp.magnitudes = o.at("magnitudes").get<std::vector<double>>();
        f.singular.jumps.push_back(std::move(jp));
    }
    long kmax = 0;
    for (const auto& c : smooth.at("coeffs")) kmax = std::max(kmax, c.at("k").get<long>());
    f.smooth.coeffs.assign(kmax, {0.0, 0.0});
    for (const auto& c : smooth.at("coeffs")) {
        const long k = c.at("k").get<long>();
        if (k == 0)
            f.smooth.f0 = c.at("re").get<double>();
        else if (k > 0)
            f.smooth.coeffs[k - 1] = {c.at("re").get<double>(), c.at("im").get<double>()};
        else
            throw ConfigError("test function: smooth coeffs are stored for k >= 0 only");
    }
    f.singular.validate();
    f.smooth.validate();
    return f;
}

std::string to_json(const ReconstructionResult& r) {
    ordered_json j;
    j["schema"] = 1;
    ordered_json cfg;
    cfg["K"] = r.config.K;
    cfg["d"] = r.config.effective_d();
    cfg["d1"] = r.config.d1;
    cfg["M"] = r.config.M;
    cfg["bounds"] = {{"J1", r.config.bounds.J1},
                     {"J2", r.config.bounds.J2},
                     {"J3", r.config.bounds.J3},
                     {"T", r.config.bounds.T}};
    j["config"] = cfg;
    j["jumps"] = ordered_json::array();
    for (const auto& est : r.jumps) {
        ordered_json o;
        o["xi"] = est.xi;
        o["omega_re"] = est.omega.real();
        o["omega_im"] = est.omega.imag();
        o["magnitudes"] = est.magnitudes;
        o["magnitude_residual"] = est.diagnostics.magnitude_residual;
        ordered_json sp = ordered_json::array();
        for (const auto& y : est.diagnostics.predicted_spurious)
            sp.push_back({{"re", y.real()}, {"im", y.imag()}});
        o["predicted_spurious"] = sp;
        j["jumps"].push_back(o);
    }
    ordered_json sc = ordered_json::array();
    for (long k = r.smooth_coeffs.first; k <= r.smooth_coeffs.last(); ++k)
        sc.push_back({{"k", k}, {"re", r.smooth_coeffs.at(k).real()}, {"im", r.smooth_coeffs.at(k).imag()}});
    j["smooth_coeffs"] = sc;
    j["timings"] = {{"prony_s", r.timings.prony_s},
                    {"localize_s", r.timings.localize_s},
                    {"resolve_s", r.timings.resolve_s},
                    {"synth_s", r.timings.synth_s}};
    return j.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write file: " + path);
    out << content;
}

std::string csv_field(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {
std::string quote_if_needed(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}
}  // namespace

std::string csv_emit(const CsvTable& t) {
    std::string out;
    auto emit_row = [&out](const std::vector<std::string>& row) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += quote_if_needed(row[i]);
        }
        out += '\n';
    };
    emit_row(t.header);
    for (const auto& r : t.rows) emit_row(r);
    return out;
}

CsvTable csv_parse(const std::string& text) {
    CsvTable t;
    std::vector<std::string> row;
    std::string field;
    bool quoted = false, any = false, header_done = false;
    auto end_field = [&] {
        row.push_back(field);
        field.clear();
    };
    auto end_row = [&] {
        end_field();
        if (!header_done) {
            t.header = row;
            header_done = true;
        } else {
            t.rows.push_back(row);
        }
        row.clear();
        any = false;
    };
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
            continue;
        }
        if (c == '"' && field.empty()) {
            quoted = true;
            any = true;
        } else if (c == ',') {
            end_field();
            any = true;
        } else if (c == '\n') {
            if (any || !field.empty() || !row.empty()) end_row();
        } else if (c == '\r') {
            // tolerated on input; never emitted
        } else {
            field += c;
            any = true;
        }
    }
    if (any || !field.empty() || !row.empty()) end_row();
    return t;
}

}  // namespace pwf
