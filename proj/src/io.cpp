#include "segmatch/io.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

#include "segmatch/interval_match.hpp"

namespace segmatch {

using nlohmann::json;

namespace {

json parse_json(std::string_view text) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
}

void check_keys(const json& obj, const std::string& where,
                std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) throw ParseError(where + ": expected an object");
    for (const auto& [key, _] : obj.items()) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || key == a;
        if (!ok) throw ParseError(where + ": unknown field \"" + key + "\"");
    }
}

double number(const json& obj, const char* key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end()) throw ParseError(where + "." + key + ": missing");
    if (!it->is_number()) throw ParseError(where + "." + key + ": expected a number");
    return it->get<double>();
}

double number_or(const json& obj, const char* key, double fallback, const std::string& where) {
    return obj.contains(key) ? number(obj, key, where) : fallback;
}

const json& array_field(const json& obj, const char* key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end()) throw ParseError(where + key + ": missing");
    if (!it->is_array()) throw ParseError(where + key + ": expected an array");
    return *it;
}

std::int64_t integer(const json& v, const std::string& where) {
    if (!v.is_number_integer()) throw ParseError(where + ": expected an integer");
    return v.get<std::int64_t>();
}

Symbol parse_symbol(const json& v, const std::string& where) {
    if (v.is_null()) return std::nullopt;
    if (!v.is_array()) throw ParseError(where + ": expected an array of [lo,hi] or null");
    std::vector<Interval> parts;
    for (std::size_t k = 0; k < v.size(); ++k) {
        const std::string w = where + "[" + std::to_string(k) + "]";
        const auto& iv = v[k];
        if (!iv.is_array() || iv.size() != 2) throw ParseError(w + ": expected [lo,hi]");
        Interval in{integer(iv[0], w), integer(iv[1], w)};
        if (in.lo > in.hi) throw ParseError(w + ": lo > hi");
        parts.push_back(in);
    }
    return IntervalUnion(std::move(parts));
}

json symbol_json(const Symbol& s) {
    if (!s) return nullptr;
    json arr = json::array();
    for (const auto& iv : s->intervals()) arr.push_back({iv.lo, iv.hi});
    return arr;
}

}  // namespace

SegmentSet parse_segments(std::string_view text) {
    const json doc = parse_json(text);
    check_keys(doc, "segments", {"horizontal", "vertical"});
    SegmentSet out;
    static const json none = json::array();
    const auto& hs = doc.contains("horizontal") ? array_field(doc, "horizontal", "") : none;
    for (std::size_t i = 0; i < hs.size(); ++i) {
        const std::string where = "horizontal[" + std::to_string(i) + "]";
        check_keys(hs[i], where, {"y", "x0", "x1", "w"});
        out.h.push_back({number(hs[i], "y", where), number(hs[i], "x0", where),
                         number(hs[i], "x1", where), number_or(hs[i], "w", 1.0, where)});
    }
    const auto& vs = doc.contains("vertical") ? array_field(doc, "vertical", "") : none;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        const std::string where = "vertical[" + std::to_string(i) + "]";
        check_keys(vs[i], where, {"x", "y0", "y1", "w"});
        out.v.push_back({number(vs[i], "x", where), number(vs[i], "y0", where),
                         number(vs[i], "y1", where), number_or(vs[i], "w", 1.0, where)});
    }
    try {
        validate(out);
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
    return out;
}

std::string serialize_segments(const SegmentSet& s) {
    json doc;
    doc["horizontal"] = json::array();
    doc["vertical"] = json::array();
    for (const auto& h : s.h)
        doc["horizontal"].push_back({{"y", h.y}, {"x0", h.x_lo}, {"x1", h.x_hi}, {"w", h.weight}});
    for (const auto& v : s.v)
        doc["vertical"].push_back({{"x", v.x}, {"y0", v.y_lo}, {"y1", v.y_hi}, {"w", v.weight}});
    return doc.dump(2);
}

PolyChain parse_chain(std::string_view text) {
    const json doc = parse_json(text);
    check_keys(doc, "chain", {"vertices"});
    const auto& vs = array_field(doc, "vertices", "");
    PolyChain out;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        const std::string where = "vertices[" + std::to_string(i) + "]";
        if (!vs[i].is_array() || vs[i].size() != 2 || !vs[i][0].is_number() ||
            !vs[i][1].is_number())
            throw ParseError(where + ": expected [x,y]");
        out.vertices.push_back({vs[i][0].get<double>(), vs[i][1].get<double>()});
    }
    try {
        validate(out);
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
    return out;
}

std::string serialize_chain(const PolyChain& c) {
    json doc;
    doc["vertices"] = json::array();
    for (const auto& p : c.vertices) doc["vertices"].push_back({p.x, p.y});
    return doc.dump(2);
}

IntervalInstance parse_interval_instance(std::string_view text) {
    const json doc = parse_json(text);
    check_keys(doc, "instance", {"M", "pattern", "text"});
    IntervalInstance inst;
    auto it = doc.find("M");
    if (it == doc.end()) throw ParseError("M: missing");
    inst.universe = integer(*it, "M");
    if (inst.universe < 1) throw ParseError("M: must be >= 1");
    const auto& p = array_field(doc, "pattern", "");
    for (std::size_t i = 0; i < p.size(); ++i)
        inst.pattern.push_back(parse_symbol(p[i], "pattern[" + std::to_string(i) + "]"));
    const auto& t = array_field(doc, "text", "");
    for (std::size_t i = 0; i < t.size(); ++i)
        inst.text.push_back(parse_symbol(t[i], "text[" + std::to_string(i) + "]"));
    try {
        validate(inst);
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
    return inst;
}

std::string serialize_interval_instance(const IntervalInstance& inst) {
    json doc;
    doc["M"] = inst.universe;
    doc["pattern"] = json::array();
    doc["text"] = json::array();
    for (const auto& s : inst.pattern) doc["pattern"].push_back(symbol_json(s));
    for (const auto& s : inst.text) doc["text"].push_back(symbol_json(s));
    return doc.dump();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path + ": cannot open for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError(path + ": cannot open for writing");
    out << content;
}

}  // namespace segmatch
