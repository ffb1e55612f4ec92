#include "unselfie/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace unselfie {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(const std::string& key, const std::string& value) {
    T out{};
    const char* first = value.data();
    const char* last = value.data() + value.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc{} || ptr != last) {
        throw ConfigError("config key '" + key + "': cannot parse '" + value + "'");
    }
    return out;
}

std::vector<int> parse_int_list(const std::string& key, const std::string& value) {
    std::vector<int> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_number<int>(key, trim(item)));
    return out;
}

AtlasCell parse_cell(const std::string& key, const std::string& value) {
    const auto v = parse_int_list(key, value);
    if (v.size() != 2) throw ConfigError("config key '" + key + "': expected x,y");
    return {v[0], v[1]};
}

std::string format_double(double d) {
    std::ostringstream os;
    os.precision(17);
    os << d;
    return os.str();
}

}  // namespace

AlignmentSpec PipelineConfig::alignment() const {
    AlignmentSpec spec;
    spec.left_anchor = shoulder_left;
    spec.right_anchor = shoulder_right;
    spec.canvas_size = canvas_size;
    return spec;
}

void PipelineConfig::validate() const {
    auto fail = [](const std::string& msg) { throw ConfigError(msg); };
    (void)layout();  // throws on a bad grid
    if (canvas_size < 16) fail("canvas_size must be at least 16");
    const AtlasLayout l = layout();
    for (AtlasCell c : {shoulder_left, shoulder_right}) {
        if (l.part_at(c.x, c.y) == 0) fail("shoulder anchor outside every atlas tile");
    }
    if (torso_part < 1 || torso_part > kMaxPart) fail("torso_part must be in 1..24");
    for (int h : head_parts) {
        if (h < 1 || h > kMaxPart) fail("head_parts must be in 1..24");
    }
    if (k == 0) fail("k must be positive");
    if (k1 < k) fail("k1 must be at least k");
    loss.validate();
    if (body_dilation < 0 || head_dilation < 0 || feather < 0) fail("radii must be nonnegative");
    if (!(matte_threshold >= 0.0 && matte_threshold <= 1.0)) fail("matte_threshold outside [0,1]");
    if (!(coord_tolerance > 0.0) || !(color_tolerance > 0.0)) fail("tolerances must be positive");
    if (inpaint_iteration_factor < 1) fail("inpaint_iteration_factor must be positive");
    if (!(split_ratio >= 0.0 && split_ratio <= 1.0)) fail("split_ratio outside [0,1]");
}

std::string PipelineConfig::serialize() const {
    std::ostringstream os;
    auto list = [](const std::vector<int>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
        return s;
    };
    os << "atlas_size=" << atlas_size << '\n'
       << "atlas_rows=" << atlas_rows << '\n'
       << "atlas_cols=" << atlas_cols << '\n'
       << "canvas_size=" << canvas_size << '\n'
       << "shoulder_left=" << shoulder_left.x << ',' << shoulder_left.y << '\n'
       << "shoulder_right=" << shoulder_right.x << ',' << shoulder_right.y << '\n'
       << "torso_part=" << torso_part << '\n'
       << "head_parts=" << list(head_parts) << '\n'
       << "k=" << k << '\n'
       << "k1=" << k1 << '\n'
       << "lambda1=" << format_double(loss.lambda1) << '\n'
       << "lambda2=" << format_double(loss.lambda2) << '\n'
       << "lambda3=" << format_double(loss.lambda3) << '\n'
       << "lambda4=" << format_double(loss.lambda4) << '\n'
       << "lambda5=" << format_double(loss.lambda5) << '\n'
       << "body_dilation=" << body_dilation << '\n'
       << "head_dilation=" << head_dilation << '\n'
       << "feather=" << feather << '\n'
       << "matte_threshold=" << format_double(matte_threshold) << '\n'
       << "coord_tolerance=" << format_double(coord_tolerance) << '\n'
       << "inpaint_iteration_factor=" << inpaint_iteration_factor << '\n'
       << "color_tolerance=" << format_double(color_tolerance) << '\n'
       << "split_ratio=" << format_double(split_ratio) << '\n'
       << "seed=" << seed << '\n';
    return os.str();
}

PipelineConfig parse_config(const std::string& text) {
    PipelineConfig cfg;
    using Setter = std::function<void(const std::string&, const std::string&)>;
    auto integer = [](int& field) -> Setter {
        return [&field](const std::string& k, const std::string& v) { field = parse_number<int>(k, v); };
    };
    auto real = [](double& field) -> Setter {
        return [&field](const std::string& k, const std::string& v) { field = parse_number<double>(k, v); };
    };
    auto count = [](std::size_t& field) -> Setter {
        return [&field](const std::string& k, const std::string& v) {
            field = parse_number<std::size_t>(k, v);
        };
    };
    const std::map<std::string, Setter> setters = {
        {"atlas_size", integer(cfg.atlas_size)},
        {"atlas_rows", integer(cfg.atlas_rows)},
        {"atlas_cols", integer(cfg.atlas_cols)},
        {"canvas_size", integer(cfg.canvas_size)},
        {"shoulder_left", [&](const std::string& k, const std::string& v) { cfg.shoulder_left = parse_cell(k, v); }},
        {"shoulder_right", [&](const std::string& k, const std::string& v) { cfg.shoulder_right = parse_cell(k, v); }},
        {"torso_part", integer(cfg.torso_part)},
        {"head_parts", [&](const std::string& k, const std::string& v) { cfg.head_parts = parse_int_list(k, v); }},
        {"k", count(cfg.k)},
        {"k1", count(cfg.k1)},
        {"lambda1", real(cfg.loss.lambda1)},
        {"lambda2", real(cfg.loss.lambda2)},
        {"lambda3", real(cfg.loss.lambda3)},
        {"lambda4", real(cfg.loss.lambda4)},
        {"lambda5", real(cfg.loss.lambda5)},
        {"body_dilation", integer(cfg.body_dilation)},
        {"head_dilation", integer(cfg.head_dilation)},
        {"feather", integer(cfg.feather)},
        {"matte_threshold", real(cfg.matte_threshold)},
        {"coord_tolerance", real(cfg.coord_tolerance)},
        {"inpaint_iteration_factor", integer(cfg.inpaint_iteration_factor)},
        {"color_tolerance", real(cfg.color_tolerance)},
        {"split_ratio", real(cfg.split_ratio)},
        {"seed", [&](const std::string& k, const std::string& v) { cfg.seed = parse_number<std::uint64_t>(k, v); }},
    };

    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key=value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const auto it = setters.find(key);
        if (it == setters.end()) throw ConfigError("unknown config key '" + key + "'");
        it->second(key, value);
    }
    cfg.validate();
    return cfg;
}

PipelineConfig config_load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

}  // namespace unselfie
