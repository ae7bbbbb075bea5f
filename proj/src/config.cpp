#include "galcoh/config.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

namespace galcoh {

namespace {

using nlohmann::json;

Int parse_int(const json& j, const std::string& where) {
    if (j.is_number_integer()) return Int(j.get<long>());
    if (j.is_string()) {
        try {
            return Int(j.get<std::string>());
        } catch (const std::invalid_argument&) {
            throw ConfigError(where, "not a decimal integer: " + j.get<std::string>());
        }
    }
    throw ConfigError(where, "expected an integer or a decimal string");
}

IntMatrix parse_matrix(const json& j, std::size_t rows, std::size_t cols,
                       const std::string& where) {
    if (!j.is_array() || j.size() != rows)
        throw ConfigError(where, "expected " + std::to_string(rows) + " rows");
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const json& row = j[i];
        if (!row.is_array() || row.size() != cols)
            throw ConfigError(where + "[" + std::to_string(i) + "]",
                              "expected " + std::to_string(cols) + " entries");
        for (std::size_t k = 0; k < cols; ++k)
            m.at(i, k) = parse_int(row[k], where + "[" + std::to_string(i) + "]");
    }
    return m;
}

json dump_matrix(const IntMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j).get_str());
        rows.push_back(std::move(row));
    }
    return rows;
}

FinGroup parse_group(const json& j) {
    if (j.contains("table")) {
        const json& t = j["table"];
        if (!t.is_array()) throw ConfigError("group.table", "expected an array of rows");
        std::vector<std::vector<int>> table;
        for (const auto& row : t) table.push_back(row.get<std::vector<int>>());
        try {
            return FinGroup::from_table(std::move(table));
        } catch (const std::exception& ex) {
            throw ConfigError("group.table", ex.what());
        }
    }
    if (j.contains("permutations")) {
        const json& p = j["permutations"];
        if (!p.contains("points") || !p.contains("generators"))
            throw ConfigError("group.permutations", "needs points and generators");
        std::vector<std::vector<int>> gens;
        for (const auto& g : p["generators"]) gens.push_back(g.get<std::vector<int>>());
        try {
            return FinGroup::from_permutations(p["points"].get<int>(), gens);
        } catch (const std::exception& ex) {
            throw ConfigError("group.permutations", ex.what());
        }
    }
    if (j.contains("cyclic")) {
        try {
            return FinGroup::cyclic(j["cyclic"].get<int>());
        } catch (const std::exception& ex) {
            throw ConfigError("group.cyclic", ex.what());
        }
    }
    throw ConfigError("group", "expected one of: table, permutations, cyclic");
}

Subgroup parse_subgroup(const json& j, const FinGroup& g, const std::string& where) {
    std::vector<int> members;
    try {
        members = j.get<std::vector<int>>();
    } catch (const std::exception&) {
        throw ConfigError(where, "expected an array of element indices");
    }
    try {
        return Subgroup(g, std::move(members));
    } catch (const std::exception& ex) {
        throw ConfigError(where, ex.what());
    }
}

PlaceSpec parse_place(const json& j, const FinGroup& g, const std::string& where) {
    PlaceSpec p;
    if (!j.contains("name")) throw ConfigError(where, "place needs a name");
    p.name = j["name"].get<std::string>();
    std::string kind = j.value("kind", "finite");
    if (kind == "finite")
        p.kind = PlaceKind::finite;
    else if (kind == "real")
        p.kind = PlaceKind::real;
    else if (kind == "complex")
        p.kind = PlaceKind::complex;
    else
        throw ConfigError(where + ".kind", "expected finite, real or complex");
    if (j.contains("decomposition"))
        p.decomposition = parse_subgroup(j["decomposition"], g, where + ".decomposition");
    else
        p.decomposition = Subgroup::trivial(g);
    if (j.contains("residue_size"))
        p.residue_size = parse_int(j["residue_size"], where + ".residue_size");
    if (j.contains("quadratic_classes")) {
        const json& q = j["quadratic_classes"];
        const char* names[3] = {"eps", "pi", "eps_pi"};
        for (int t = 0; t < 3; ++t)
            if (q.contains(names[t]) && !q[names[t]].is_null())
                p.quadratic_classes[t] =
                    parse_subgroup(q[names[t]], g, where + ".quadratic_classes." + names[t]);
    }
    try {
        p.validate();
    } catch (const std::exception& ex) {
        throw ConfigError(where, ex.what());
    }
    return p;
}

}  // namespace

ModelConfig ModelConfig::parse(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& ex) {
        throw ConfigError("document", ex.what());
    }

    if (!j.contains("group")) throw ConfigError("document", "missing group");
    FinGroup g = parse_group(j["group"]);

    if (!j.contains("module")) throw ConfigError("document", "missing module");
    const json& mod = j["module"];
    if (!mod.contains("ambient_rank")) throw ConfigError("module", "missing ambient_rank");
    std::size_t rank = mod["ambient_rank"].get<std::size_t>();

    IntMatrix relations(rank, 0);
    if (mod.contains("relations")) {
        const json& rels = mod["relations"];
        if (!rels.is_array()) throw ConfigError("module.relations", "expected an array of columns");
        relations = IntMatrix(rank, rels.size());
        for (std::size_t c = 0; c < rels.size(); ++c) {
            const json& col = rels[c];
            std::string where = "module.relations[" + std::to_string(c) + "]";
            if (!col.is_array() || col.size() != rank)
                throw ConfigError(where, "expected " + std::to_string(rank) + " entries");
            for (std::size_t i = 0; i < rank; ++i)
                relations.at(i, c) = parse_int(col[i], where);
        }
    }
    FgAbGroup base;
    try {
        base = FgAbGroup::from_presentation(rank, relations);
    } catch (const std::exception& ex) {
        throw ConfigError("module.relations", ex.what());
    }

    std::vector<std::pair<int, IntMatrix>> actions;
    if (mod.contains("actions")) {
        const json& acts = mod["actions"];
        for (std::size_t a = 0; a < acts.size(); ++a) {
            std::string where = "module.actions[" + std::to_string(a) + "]";
            const json& act = acts[a];
            if (!act.contains("element") || !act.contains("matrix"))
                throw ConfigError(where, "needs element and matrix");
            actions.emplace_back(act["element"].get<int>(),
                                 parse_matrix(act["matrix"], rank, rank, where + ".matrix"));
        }
    }

    ModelConfig out;
    try {
        out.module = actions.empty() ? GModule::trivial(g, base)
                                     : GModule::from_generator_actions(g, base, actions);
    } catch (const std::exception& ex) {
        throw ConfigError("module.actions", ex.what());
    }

    if (j.contains("places")) {
        const json& places = j["places"];
        for (std::size_t p = 0; p < places.size(); ++p)
            out.places.named_places.push_back(
                parse_place(places[p], g, "places[" + std::to_string(p) + "]"));
    }
    out.places.reservoir_depth = j.value("reservoir_depth", 1);
    if (out.places.reservoir_depth < 0)
        throw ConfigError("reservoir_depth", "must be nonnegative");
    return out;
}

ModelConfig ModelConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path, "cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

std::string ModelConfig::dump() const {
    json j;
    const FinGroup& g = module.group();
    json table = json::array();
    for (int a = 0; a < g.order(); ++a) {
        json row = json::array();
        for (int b = 0; b < g.order(); ++b) row.push_back(g.mult(a, b));
        table.push_back(std::move(row));
    }
    j["group"]["table"] = std::move(table);

    j["module"]["ambient_rank"] = module.base().ambient_rank();
    json rels = json::array();
    const IntMatrix& r = module.base().relations();
    for (std::size_t c = 0; c < r.cols(); ++c) {
        json col = json::array();
        for (std::size_t i = 0; i < r.rows(); ++i) col.push_back(r.at(i, c).get_str());
        rels.push_back(std::move(col));
    }
    j["module"]["relations"] = std::move(rels);
    json acts = json::array();
    for (int e = 1; e < g.order(); ++e) {
        json act;
        act["element"] = e;
        act["matrix"] = dump_matrix(module.action(e));
        acts.push_back(std::move(act));
    }
    j["module"]["actions"] = std::move(acts);

    json pl = json::array();
    for (const auto& p : places.named_places) {
        json pj;
        pj["name"] = p.name;
        pj["kind"] = p.kind == PlaceKind::finite ? "finite"
                     : p.kind == PlaceKind::real ? "real"
                                                 : "complex";
        pj["decomposition"] = p.decomposition.members();
        if (p.residue_size) pj["residue_size"] = p.residue_size->get_str();
        const char* names[3] = {"eps", "pi", "eps_pi"};
        bool any = false;
        for (int t = 0; t < 3; ++t) any = any || p.quadratic_classes[t].has_value();
        if (any) {
            json q;
            for (int t = 0; t < 3; ++t)
                if (p.quadratic_classes[t]) q[names[t]] = p.quadratic_classes[t]->members();
            pj["quadratic_classes"] = std::move(q);
        }
        pl.push_back(std::move(pj));
    }
    j["places"] = std::move(pl);
    j["reservoir_depth"] = places.reservoir_depth;
    return j.dump(2) + "\n";
}

std::vector<std::vector<Int>> parse_class_literal(const std::string& text) {
    std::vector<std::vector<Int>> parts;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ';')) {
        // strip whitespace and optional surrounding parentheses
        std::string clean;
        for (char c : part)
            if (!isspace(static_cast<unsigned char>(c))) clean += c;
        if (!clean.empty() && clean.front() == '(') clean.erase(0, 1);
        if (!clean.empty() && clean.back() == ')') clean.pop_back();
        std::vector<Int> coords;
        if (!clean.empty()) {
            std::stringstream cs(clean);
            std::string tok;
            while (std::getline(cs, tok, ',')) {
                try {
                    coords.emplace_back(tok);
                } catch (const std::invalid_argument&) {
                    throw ConfigError("class literal", "not an integer: " + tok);
                }
            }
        }
        parts.push_back(std::move(coords));
    }
    if (parts.empty()) throw ConfigError("class literal", "empty literal");
    return parts;
}

}  // namespace galcoh
