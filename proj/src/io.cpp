#include "catqed/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

namespace catqed::io {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_angle(const json& v) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        auto number_part = [&](size_t suffix_len) {
            const std::string body = s.substr(0, s.size() - suffix_len);
            size_t parsed = 0;
            double d = std::stod(body, &parsed);
            if (parsed != body.size()) {
                throw std::invalid_argument("malformed angle \"" + s + "\"");
            }
            return d;
        };
        if (s.ends_with("deg")) return number_part(3) * std::numbers::pi / 180.0;
        if (s.ends_with("rad")) return number_part(3);
        throw std::invalid_argument("angle \"" + s + "\" needs a deg or rad suffix");
    }
    throw std::invalid_argument("angle must be a number (radians) or a suffixed string");
}

cx parse_complex(const json& v) {
    if (v.is_number()) return cx(v.get<double>(), 0.0);
    if (v.is_object()) return cx(v.value("re", 0.0), v.value("im", 0.0));
    throw std::invalid_argument("complex value must be a number or {re, im}");
}

json complex_to_json(cx v) { return json{{"re", v.real()}, {"im", v.imag()}}; }

ProtocolConfig parse_protocol_config(const json& doc) {
    ProtocolConfig cfg;
    cfg.alpha1 = parse_complex(doc.at("alpha1"));
    cfg.alpha2 = parse_complex(doc.at("alpha2"));
    cfg.theta1 = parse_angle(doc.at("theta1"));
    cfg.theta2 = parse_angle(doc.at("theta2"));
    cfg.delta = doc.contains("delta") ? parse_angle(doc.at("delta")) : 0.0;
    for (double v : {cfg.alpha1.real(), cfg.alpha1.imag(), cfg.alpha2.real(), cfg.alpha2.imag(),
                     cfg.theta1, cfg.theta2, cfg.delta}) {
        if (!std::isfinite(v)) throw std::invalid_argument("config values must be finite");
    }
    return cfg;
}

json protocol_config_to_json(const ProtocolConfig& cfg) {
    return json{{"alpha1", complex_to_json(cfg.alpha1)},
                {"alpha2", complex_to_json(cfg.alpha2)},
                {"theta1", cfg.theta1},
                {"theta2", cfg.theta2},
                {"delta", cfg.delta}};
}

json superstate_to_json(const SuperState& s) {
    json terms = json::array();
    for (const BasisTerm& t : s.terms) {
        json atoms = json::array();
        for (size_t i = 0; i < t.atoms.size(); ++i) {
            atoms.push_back(atom_label_string(t.atoms[i], static_cast<int>(i) + 1));
        }
        json fields = json::array();
        for (cx f : t.fields) fields.push_back(complex_to_json(f));
        terms.push_back(json{{"re", t.coeff.real()},
                             {"im", t.coeff.imag()},
                             {"atoms", atoms},
                             {"fields", fields}});
    }
    return json{{"terms", terms}, {"normalized", s.is_normalized}};
}

SuperState superstate_from_json(const json& doc) {
    SuperState s;
    s.is_normalized = doc.value("normalized", false);
    for (const json& jt : doc.at("terms")) {
        BasisTerm t;
        t.coeff = cx(jt.at("re").get<double>(), jt.at("im").get<double>());
        for (const json& ja : jt.at("atoms")) {
            const std::string a = ja.get<std::string>();
            if (a.size() < 2) throw std::invalid_argument("bad atom label \"" + a + "\"");
            t.atoms.push_back(level_from_char(a[0]));
        }
        for (const json& jf : jt.at("fields")) t.fields.push_back(parse_complex(jf));
        s.terms.push_back(std::move(t));
    }
    return s;
}

SweepSpec parse_sweep_spec(const json& doc) {
    auto parse_axis = [](const json& j) {
        SweepAxis ax;
        ax.name = j.at("name").get<std::string>();
        bool angle = ax.name.starts_with("theta");
        ax.min = angle ? parse_angle(j.at("min")) : j.at("min").get<double>();
        ax.max = angle ? parse_angle(j.at("max")) : j.at("max").get<double>();
        ax.steps = j.at("steps").get<int>();
        if (ax.steps < 1) throw std::invalid_argument("axis steps must be >= 1");
        return ax;
    };
    SweepSpec spec;
    spec.outcome = doc.value("outcome", "all");
    spec.axis1 = parse_axis(doc.at("axis1"));
    if (doc.contains("axis2")) spec.axis2 = parse_axis(doc.at("axis2"));
    if (doc.contains("fixed")) {
        for (const auto& [key, value] : doc.at("fixed").items()) {
            const bool is_angle = key == "theta1" || key == "theta2" || key == "delta";
            spec.fixed[key] = is_angle ? parse_angle(value) : value.get<double>();
        }
    }
    return spec;
}

json convention_to_json(const WignerConvention& c) {
    return json{{"alpha_center_scale", c.alpha_center_scale}, {"normalization", c.normalization}};
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::string out = "axis1,axis2,outcome,entropy\n";
    for (const SweepRow& r : rows) {
        out += format_double(r.axis1);
        out += ',';
        if (!std::isnan(r.axis2)) out += format_double(r.axis2);
        out += ',';
        out += r.outcome;
        out += ',';
        out += format_double(r.entropy);
        out += '\n';
    }
    return out;
}

json sweep_json(const std::vector<SweepRow>& rows) {
    json arr = json::array();
    for (const SweepRow& r : rows) {
        json rec{{"axis1", r.axis1},
                 {"outcome", r.outcome},
                 {"entropy", r.entropy},
                 {"entropy_gram", r.entropy_gram},
                 {"probability", r.probability}};
        if (!std::isnan(r.axis2)) rec["axis2"] = r.axis2;
        if (!std::isnan(r.entropy_analytic)) rec["entropy_analytic"] = r.entropy_analytic;
        arr.push_back(std::move(rec));
    }
    return arr;
}

std::string wigner_csv(const WignerField& f) {
    std::string out = "x,p,W\n";
    for (int i = 0; i < f.grid.nx; ++i) {
        for (int j = 0; j < f.grid.np; ++j) {
            out += format_double(f.grid.x(i));
            out += ',';
            out += format_double(f.grid.p(j));
            out += ',';
            out += format_double(f.at(i, j));
            out += '\n';
        }
    }
    return out;
}

void write_ppm(const WignerField& f, const std::filesystem::path& path) {
    const double scale = std::max(std::abs(field_min(f)), std::abs(field_max(f)));
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + path.string());
    os << "P6\n" << f.grid.nx << " " << f.grid.np << "\n255\n";
    // p decreasing down the image, x increasing to the right
    for (int j = f.grid.np - 1; j >= 0; --j) {
        for (int i = 0; i < f.grid.nx; ++i) {
            double v = scale > 0.0 ? f.at(i, j) / scale : 0.0;
            unsigned char rgb[3];
            if (v >= 0.0) {
                rgb[0] = 255;
                rgb[1] = rgb[2] = static_cast<unsigned char>(std::lround(255 * (1.0 - v)));
            } else {
                rgb[2] = 255;
                rgb[0] = rgb[1] = static_cast<unsigned char>(std::lround(255 * (1.0 + v)));
            }
            os.write(reinterpret_cast<const char*>(rgb), 3);
        }
    }
}

void write_text(const std::filesystem::path& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + path.string());
    os << content;
}

json read_json_file(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot read " + path.string());
    return json::parse(is);
}

}  // namespace catqed::io
