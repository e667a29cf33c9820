#include "ccsl/config.hpp"

#include "ccsl/constants.hpp"
#include "ccsl/error.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <set>

namespace ccsl {

namespace {

struct Entry {
    std::string key;
    std::string value;
    std::size_t line = 0;
    std::size_t key_col = 0;
    std::size_t value_col = 0;
    bool used = false;
};

struct Section {
    std::string name; // "" for the top level
    std::size_t line = 0;
    std::vector<Entry> entries;
};

const std::set<std::string> kSingleSections{"ceiling", "geometry", "oscillator",
                                            "phonon",  "cold_atom", "xray"};
const std::string kPartSection = "geometry.part";

// Every key a section may hold; frequency keys carry a unit suffix.
const std::map<std::string, std::set<std::string>> kKnownKeys{
    {"", {"id", "kind", "provenance", "temperature_k"}},
    {"ceiling",
     {"value", "probe_hz", "probe_rad_s", "probe_lo_hz", "probe_lo_rad_s", "probe_hi_hz",
      "probe_hi_rad_s"}},
    {"xray", {"omega_obs_hz", "omega_obs_rad_s"}},
    {"geometry", {"measurement_axis", "treatment"}},
    {kPartSection,
     {"shape", "radius_m", "lx_m", "ly_m", "lz_m", "side_m", "length_m", "axis", "frame_x",
      "frame_y", "density_kg_m3", "mass_kg", "offset_m"}},
    {"oscillator", {"mass_kg", "omega_m_hz", "omega_m_rad_s", "gamma_m_per_s", "temperature_k"}},
    {"phonon",
     {"v_s_m_per_s", "dispersion", "force_constant_n_per_m", "atom_mass_kg", "spacing_m"}},
    {"cold_atom", {"mass_number", "atom_mass_kg", "expansion_time_s"}},
};
const std::set<std::string> kFrequencyBases{"probe", "probe_lo", "probe_hi", "omega_obs",
                                            "omega_m"};

bool is_key_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

// Position of a '#' that starts a comment, honouring quoted strings.
std::size_t comment_start(std::string_view line) {
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted && c == '\\')
            ++i;
        else if (c == '"')
            quoted = !quoted;
        else if (c == '#' && !quoted)
            return i;
    }
    return line.size();
}

std::vector<Section> lex(std::string_view text) {
    std::vector<Section> sections(1);
    std::set<std::string> seen;
    std::size_t lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = std::min(text.find('\n', pos), text.size());
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++lineno;
        if (lineno == 1 && line.substr(0, 3) == "\xEF\xBB\xBF")
            line.remove_prefix(3);
        line = line.substr(0, comment_start(line));

        std::size_t b = 0;
        while (b < line.size() && is_space(line[b]))
            ++b;
        std::size_t e = line.size();
        while (e > b && is_space(line[e - 1]))
            --e;
        if (b == e)
            continue;
        const std::string_view body = line.substr(b, e - b);
        const std::size_t col = b + 1;

        if (body.front() == '[') {
            const bool array = body.size() >= 2 && body[1] == '[';
            const std::size_t open = array ? 2 : 1;
            if (body.size() < 2 * open + 1 || body.substr(body.size() - open) != (array ? "]]" : "]"))
                throw ParseError(lineno, col, "malformed section header");
            const std::string name(body.substr(open, body.size() - 2 * open));
            if (array) {
                if (name != kPartSection)
                    throw ParseError(lineno, col + open, "unknown array section '" + name + "'");
            } else {
                if (!kSingleSections.count(name))
                    throw ParseError(lineno, col + open, "unknown section '" + name + "'");
                if (!seen.insert(name).second)
                    throw ParseError(lineno, col, "duplicate section '" + name + "'");
            }
            sections.push_back(Section{name, lineno, {}});
            continue;
        }

        std::size_t k = 0;
        while (k < body.size() && is_key_char(body[k]))
            ++k;
        if (k == 0)
            throw ParseError(lineno, col, "expected a key");
        std::size_t eq = k;
        while (eq < body.size() && is_space(body[eq]))
            ++eq;
        if (eq >= body.size() || body[eq] != '=')
            throw ParseError(lineno, col + eq, "expected '=' after key");
        std::size_t v = eq + 1;
        while (v < body.size() && is_space(body[v]))
            ++v;
        if (v >= body.size())
            throw ParseError(lineno, col + v, "missing value");

        Entry entry{std::string(body.substr(0, k)), std::string(body.substr(v)), lineno, col,
                    col + v, false};
        for (const auto& other : sections.back().entries)
            if (other.key == entry.key)
                throw ParseError(lineno, col, "duplicate key '" + entry.key + "'");
        sections.back().entries.push_back(std::move(entry));
    }
    return sections;
}

double to_number(const Entry& e, std::string_view token, std::size_t col) {
    std::size_t b = 0;
    while (b < token.size() && is_space(token[b]))
        ++b;
    std::size_t end = token.size();
    while (end > b && is_space(token[end - 1]))
        --end;
    token = token.substr(b, end - b);
    if (!token.empty() && token.front() == '+')
        token.remove_prefix(1);
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
    if (token.empty() || ec != std::errc() || ptr != token.data() + token.size() ||
        !std::isfinite(out))
        throw ParseError(e.line, col + b, "expected a finite number for '" + e.key + "'");
    return out;
}

std::string to_text(const Entry& e) {
    const std::string& v = e.value;
    if (v.front() != '"') {
        for (char c : v)
            if (c == '"')
                throw ParseError(e.line, e.value_col, "stray quote in value");
        return v;
    }
    std::string out;
    for (std::size_t i = 1; i < v.size(); ++i) {
        const char c = v[i];
        if (c == '\\') {
            if (i + 1 >= v.size())
                break;
            const char n = v[++i];
            if (n != '"' && n != '\\')
                throw ParseError(e.line, e.value_col + i - 1, "unsupported escape");
            out += n;
        } else if (c == '"') {
            if (i + 1 != v.size())
                throw ParseError(e.line, e.value_col + i + 1, "text after closing quote");
            return out;
        } else {
            out += c;
        }
    }
    throw ParseError(e.line, e.value_col, "unterminated string");
}

class Reader {
public:
    Reader(Section& s, std::string field_prefix) : s_(s), prefix_(std::move(field_prefix)) {}

    Entry* find(const std::string& key) {
        for (auto& e : s_.entries)
            if (e.key == key) {
                e.used = true;
                return &e;
            }
        return nullptr;
    }

    std::optional<double> number(const std::string& key) {
        const Entry* e = find(key);
        if (!e)
            return std::nullopt;
        return to_number(*e, e->value, e->value_col);
    }

    double required_number(const std::string& key) {
        auto v = number(key);
        if (!v)
            throw ValidationError(prefix_ + key, "is required");
        return *v;
    }

    /// Frequency under `base_hz` or `base_rad_s`, returned in rad/s.
    std::optional<double> frequency(const std::string& base) {
        const Entry* hz = find(base + "_hz");
        const Entry* rad = find(base + "_rad_s");
        if (hz && rad)
            throw ParseError(rad->line, rad->key_col,
                             "both " + base + "_hz and " + base + "_rad_s given");
        if (hz)
            return hz_to_rad_s(to_number(*hz, hz->value, hz->value_col));
        if (rad)
            return to_number(*rad, rad->value, rad->value_col);
        return std::nullopt;
    }

    double required_frequency(const std::string& base) {
        auto v = frequency(base);
        if (!v)
            throw ValidationError(prefix_ + base, "is required (as _hz or _rad_s)");
        return *v;
    }

    std::optional<std::string> text(const std::string& key) {
        const Entry* e = find(key);
        if (!e)
            return std::nullopt;
        return to_text(*e);
    }

    std::string required_text(const std::string& key) {
        auto v = text(key);
        if (!v)
            throw ValidationError(prefix_ + key, "is required");
        return *v;
    }

    std::optional<Vec3> vec(const std::string& key) {
        const Entry* e = find(key);
        if (!e)
            return std::nullopt;
        double xyz[3];
        std::size_t start = 0;
        for (int i = 0; i < 3; ++i) {
            const std::size_t comma = e->value.find(',', start);
            const bool last = i == 2;
            if ((comma == std::string::npos) != last)
                throw ParseError(e->line, e->value_col, "expected three comma-separated numbers");
            const std::size_t stop = last ? e->value.size() : comma;
            xyz[i] = to_number(*e, std::string_view(e->value).substr(start, stop - start),
                               e->value_col + start);
            start = stop + 1;
        }
        return Vec3{xyz[0], xyz[1], xyz[2]};
    }

    /// Unit axis; rescaled only when its norm is off by more than 1e-12.
    std::optional<Vec3> axis(const std::string& key) {
        auto v = vec(key);
        if (!v)
            return std::nullopt;
        const double len = norm(*v);
        if (!(len > 0.0))
            throw ValidationError(prefix_ + key, "must be a non-zero vector");
        if (std::abs(len - 1.0) > 1e-12)
            *v = *v * (1.0 / len);
        return v;
    }

    Entry* key_entry(const std::string& key) {
        for (auto& e : s_.entries)
            if (e.key == key)
                return &e;
        return nullptr;
    }

    void finish() const {
        for (const auto& e : s_.entries) {
            if (e.used)
                continue;
            const std::string where =
                s_.name.empty() ? std::string("top level") : "[" + s_.name + "]";
            throw ParseError(e.line, e.key_col, "key '" + e.key + "' does not apply in " + where);
        }
    }

private:
    Section& s_;
    std::string prefix_;
};

ExperimentKind parse_kind(const std::string& s, const Entry& e) {
    if (s == "optomechanical") return ExperimentKind::Optomechanical;
    if (s == "xray") return ExperimentKind::XRay;
    if (s == "bulk-heating") return ExperimentKind::BulkHeating;
    if (s == "cold-atom") return ExperimentKind::ColdAtom;
    throw ParseError(e.line, e.value_col, "unknown experiment kind '" + s + "'");
}

CeilingKind ceiling_kind_for(ExperimentKind k) {
    switch (k) {
    case ExperimentKind::Optomechanical: return CeilingKind::ForcePSD;
    case ExperimentKind::XRay: return CeilingKind::XRayNormalized;
    case ExperimentKind::BulkHeating: return CeilingKind::HeatingPower;
    case ExperimentKind::ColdAtom: return CeilingKind::PositionVariance;
    }
    return CeilingKind::ForcePSD;
}

// Rejects unknown keys before any value is interpreted, in document order.
void check_keys(const std::vector<Section>& sections) {
    const Entry* first = nullptr;
    for (const auto& sec : sections) {
        const auto& known = kKnownKeys.at(sec.name);
        for (const auto& e : sec.entries)
            if (!known.count(e.key) && (!first || e.line < first->line))
                first = &e;
    }
    if (!first)
        return;
    if (kFrequencyBases.count(first->key))
        throw ParseError(first->line, first->key_col,
                         "frequency key '" + first->key + "' needs a _hz or _rad_s suffix");
    throw ParseError(first->line, first->key_col, "unknown key '" + first->key + "'");
}

Body parse_part(Section& s, std::size_t index, bool single) {
    const std::string prefix =
        single ? std::string("geometry.") : "geometry.part[" + std::to_string(index) + "].";
    Reader r(s, prefix);
    const Entry* shape_entry = r.key_entry("shape");
    const std::string shape = r.required_text("shape");
    Body body{PointMass{}, 0.0, {}};
    if (auto off = r.vec("offset_m"))
        body.offset = *off;

    if (shape == "point") {
        body.density = r.required_number("mass_kg");
        r.finish();
        return body;
    }
    if (shape == "sphere") {
        body.shape = Sphere{r.required_number("radius_m")};
    } else if (shape == "cuboid") {
        Cuboid c{0, 0, 0};
        if (auto side = r.number("side_m")) {
            c.lx = c.ly = c.lz = *side;
        } else {
            c.lx = r.required_number("lx_m");
            c.ly = r.required_number("ly_m");
            c.lz = r.required_number("lz_m");
        }
        if (auto ex = r.axis("frame_x"))
            c.ex = *ex;
        if (auto ey = r.axis("frame_y"))
            c.ey = *ey;
        body.shape = c;
    } else if (shape == "cylinder") {
        Cylinder c{r.required_number("radius_m"), r.required_number("length_m")};
        if (auto ax = r.axis("axis"))
            c.axis = *ax;
        body.shape = c;
    } else {
        throw ParseError(shape_entry->line, shape_entry->value_col,
                         "unknown shape '" + shape + "'");
    }

    const auto density = r.number("density_kg_m3");
    const auto total = r.number("mass_kg");
    if (density && total)
        throw ValidationError(prefix + "mass_kg", "give either mass_kg or density_kg_m3");
    if (density)
        body.density = *density;
    else if (total)
        body.density = *total / volume(body.shape);
    else
        throw ValidationError(prefix + "density_kg_m3", "is required (or mass_kg)");
    r.finish();
    return body;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt(const Vec3& v) { return fmt(v.x) + ", " + fmt(v.y) + ", " + fmt(v.z); }

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\')
            out += '\\';
        out += c;
    }
    return out + "\"";
}

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

} // namespace

ExperimentDescriptor parse_descriptor(std::string_view text) {
    std::vector<Section> sections = lex(text);
    check_keys(sections);
    ExperimentDescriptor d;

    Reader top(sections[0], "");
    d.id = top.required_text("id");
    const Entry* kind_entry = top.key_entry("kind");
    d.kind = parse_kind(top.required_text("kind"), *kind_entry);
    d.provenance = top.text("provenance").value_or("");
    d.temperature = top.number("temperature_k");
    top.finish();
    d.ceiling.kind = ceiling_kind_for(d.kind);

    Section* geometry = nullptr;
    std::vector<Section*> parts;
    bool have_ceiling = false;
    for (std::size_t i = 1; i < sections.size(); ++i) {
        Section& s = sections[i];
        if (s.name == kPartSection) {
            parts.push_back(&s);
            continue;
        }
        if (s.name == "geometry") {
            geometry = &s;
            continue;
        }
        Reader r(s, s.name + ".");
        if (s.name == "ceiling") {
            have_ceiling = true;
            d.ceiling.value = r.required_number("value");
            if (d.kind == ExperimentKind::Optomechanical) {
                if (auto single = r.frequency("probe")) {
                    d.ceiling.probe = Probe{*single, *single};
                    if (r.key_entry("probe_lo_hz") || r.key_entry("probe_lo_rad_s"))
                        throw ValidationError("ceiling.probe", "give a single probe or a band");
                } else {
                    const double lo = r.required_frequency("probe_lo");
                    const double hi = r.required_frequency("probe_hi");
                    if (!(lo < hi))
                        throw ValidationError("ceiling.probe", "band must satisfy lo < hi");
                    d.ceiling.probe = Probe{lo, hi};
                }
            }
        } else if (s.name == "oscillator") {
            d.oscillator = MechanicalOscillator{r.required_number("mass_kg"),
                                                r.required_frequency("omega_m"),
                                                r.required_number("gamma_m_per_s"),
                                                r.required_number("temperature_k")};
        } else if (s.name == "phonon") {
            PhononModel ph{r.required_number("v_s_m_per_s")};
            const Entry* disp_entry = r.key_entry("dispersion");
            const std::string disp = r.text("dispersion").value_or("linear");
            if (disp == "full-sine") {
                ph.dispersion = FullSineDispersion{r.required_number("force_constant_n_per_m"),
                                                   r.required_number("atom_mass_kg"),
                                                   r.required_number("spacing_m")};
            } else if (disp != "linear") {
                throw ParseError(disp_entry->line, disp_entry->value_col,
                                 "unknown dispersion '" + disp + "'");
            }
            d.phonon = ph;
        } else if (s.name == "cold_atom") {
            d.coldatom = ColdAtomDescriptor{r.required_number("mass_number"),
                                            r.required_number("atom_mass_kg"),
                                            r.required_number("expansion_time_s")};
        } else if (s.name == "xray") {
            d.omega_obs = r.required_frequency("omega_obs");
        }
        r.finish();
    }
    if (!have_ceiling)
        throw ValidationError("ceiling", "section is required");

    if (geometry || !parts.empty()) {
        Vec3 axis{1, 0, 0};
        if (geometry) {
            Reader r(*geometry, "geometry.");
            if (auto ax = r.axis("measurement_axis"))
                axis = *ax;
            const Entry* t_entry = r.key_entry("treatment");
            if (auto t = r.text("treatment")) {
                if (*t == "composite")
                    d.treatment = GeometryTreatment::Composite;
                else if (*t == "single-part")
                    d.treatment = GeometryTreatment::SinglePart;
                else
                    throw ParseError(t_entry->line, t_entry->value_col,
                                     "treatment must be composite or single-part");
            }
            r.finish();
        }
        if (parts.empty())
            throw ValidationError("geometry", "must contain at least one part");
        std::vector<Body> bodies;
        for (std::size_t i = 0; i < parts.size(); ++i)
            bodies.push_back(parse_part(*parts[i], i, parts.size() == 1));
        d.geometry = MassDistribution(std::move(bodies), axis);
    }

    validate(d);
    return d;
}

std::string serialize(const ExperimentDescriptor& d) {
    std::string out;
    auto line = [&](const std::string& key, const std::string& value) {
        out += key + " = " + value + "\n";
    };
    line("id", quote(d.id));
    line("kind", std::string(to_string(d.kind)));
    if (!d.provenance.empty())
        line("provenance", quote(d.provenance));
    if (d.temperature)
        line("temperature_k", fmt(*d.temperature));

    out += "\n[ceiling]\n";
    line("value", fmt(d.ceiling.value));
    if (d.kind == ExperimentKind::Optomechanical) {
        if (d.ceiling.probe.is_band()) {
            line("probe_lo_rad_s", fmt(d.ceiling.probe.lo));
            line("probe_hi_rad_s", fmt(d.ceiling.probe.hi));
        } else {
            line("probe_rad_s", fmt(d.ceiling.probe.lo));
        }
    }

    if (d.kind == ExperimentKind::XRay) {
        out += "\n[xray]\n";
        line("omega_obs_rad_s", fmt(d.omega_obs));
    }

    if (d.geometry) {
        out += "\n[geometry]\n";
        line("measurement_axis", fmt(d.geometry->measurement_axis()));
        line("treatment", std::string(to_string(d.treatment)));
        for (const Body& b : d.geometry->parts()) {
            out += "\n[[geometry.part]]\n";
            const bool point = std::holds_alternative<PointMass>(b.shape);
            std::visit(overloaded{
                           [&](const Sphere& s) {
                               line("shape", "sphere");
                               line("radius_m", fmt(s.radius));
                           },
                           [&](const Cuboid& c) {
                               line("shape", "cuboid");
                               line("lx_m", fmt(c.lx));
                               line("ly_m", fmt(c.ly));
                               line("lz_m", fmt(c.lz));
                               if (!(c.ex == Vec3{1, 0, 0}) || !(c.ey == Vec3{0, 1, 0})) {
                                   line("frame_x", fmt(c.ex));
                                   line("frame_y", fmt(c.ey));
                               }
                           },
                           [&](const Cylinder& c) {
                               line("shape", "cylinder");
                               line("radius_m", fmt(c.radius));
                               line("length_m", fmt(c.length));
                               line("axis", fmt(c.axis));
                           },
                           [&](const PointMass&) { line("shape", "point"); },
                       },
                       b.shape);
            line(point ? "mass_kg" : "density_kg_m3", fmt(b.density));
            if (!(b.offset == Vec3{}))
                line("offset_m", fmt(b.offset));
        }
    }

    if (d.oscillator) {
        out += "\n[oscillator]\n";
        line("mass_kg", fmt(d.oscillator->mass));
        line("omega_m_rad_s", fmt(d.oscillator->omega_m));
        line("gamma_m_per_s", fmt(d.oscillator->gamma_m));
        line("temperature_k", fmt(d.oscillator->temperature));
    }

    if (d.phonon) {
        out += "\n[phonon]\n";
        line("v_s_m_per_s", fmt(d.phonon->v_s));
        if (const auto* fs = std::get_if<FullSineDispersion>(&d.phonon->dispersion)) {
            line("dispersion", "full-sine");
            line("force_constant_n_per_m", fmt(fs->force_constant));
            line("atom_mass_kg", fmt(fs->atom_mass));
            line("spacing_m", fmt(fs->spacing));
        } else {
            line("dispersion", "linear");
        }
    }

    if (d.coldatom) {
        out += "\n[cold_atom]\n";
        line("mass_number", fmt(d.coldatom->mass_number));
        line("atom_mass_kg", fmt(d.coldatom->atom_mass));
        line("expansion_time_s", fmt(d.coldatom->expansion_time));
    }
    return out;
}

} // namespace ccsl
