#include "covmark/io.hpp"

#include <cstdio>
#include <fstream>

#include <json.hpp>

namespace covmark {

namespace {

using nlohmann::json;

json parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw io_error("parse failure in '" + path + "': " + e.what());
    }
    return j;
}

void write_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot write '" + path + "'");
    out << j.dump(2) << "\n";
}

void reject_unknown_fields(const json& j, std::initializer_list<const char*> allowed,
                           const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool known = false;
        for (const char* k : allowed)
            if (it.key() == k) known = true;
        if (!known) throw io_error("unknown field '" + it.key() + "' in " + where);
    }
}

const json& require(const json& j, const char* key, const std::string& where) {
    auto it = j.find(key);
    if (it == j.end()) throw io_error("missing field '" + std::string(key) + "' in " + where);
    return *it;
}

json complex_matrix_to_json(const CMat& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            rows.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
    return rows;
}

CMat complex_matrix_from_json(const json& j, int dim, const std::string& where) {
    if (!j.is_array() || static_cast<int>(j.size()) != dim * dim)
        throw io_error(where + " must be a row-major array of dim^2 [re, im] pairs");
    CMat m(dim, dim);
    int idx = 0;
    for (const auto& entry : j) {
        if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() ||
            !entry[1].is_number())
            throw io_error(where + " entries must be [re, im] number pairs");
        m(idx / dim, idx % dim) = Complex(entry[0].get<double>(), entry[1].get<double>());
        ++idx;
    }
    return m;
}

GeneratorTable generators_from_json(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty()) throw io_error(where + ": generators must be a nonempty array");
    GeneratorTable gens;
    for (const auto& g : j) {
        reject_unknown_fields(g, {"name", "inverse"}, where + " generator entry");
        gens.add(require(g, "name", where).get<std::string>());
    }
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string inv = require(j[i], "inverse", where).get<std::string>();
        const int id = gens.id_of(inv);
        if (id < 0) throw io_error(where + ": inverse '" + inv + "' is not a listed generator");
        gens.set_inverse(static_cast<int>(i), id);
    }
    for (int i = 0; i < gens.size(); ++i)
        if (gens.inverse(gens.inverse(i)) != i)
            throw io_error(where + ": inverse table of '" + gens.name(i) + "' is not an involution");
    return gens;
}

} // namespace

void save_automaton(const MarkovAutomaton& a, const std::string& path) {
    json j;
    j["version"] = 1;
    j["vertices"] = json::array();
    for (int v = 0; v < a.vertex_count(); ++v) j["vertices"].push_back(a.vertex_name(v));
    j["origin"] = a.vertex_name(a.origin());
    j["generators"] = json::array();
    const GeneratorTable& gens = a.generators();
    for (int g = 0; g < gens.size(); ++g)
        j["generators"].push_back({{"name", gens.name(g)}, {"inverse", gens.name(gens.inverse(g))}});
    j["edges"] = json::array();
    for (const Edge& e : a.edges())
        j["edges"].push_back({{"from", a.vertex_name(e.from)},
                              {"to", a.vertex_name(e.to)},
                              {"label", gens.name(e.label)}});
    write_file(path, j);
}

MarkovAutomaton load_automaton(const std::string& path) {
    const json j = parse_file(path);
    reject_unknown_fields(j, {"version", "vertices", "origin", "generators", "edges"},
                          "automaton file");
    const int version = require(j, "version", "automaton file").get<int>();
    if (version != 1) throw io_error("unsupported automaton file version " + std::to_string(version));

    std::vector<std::string> vertices;
    for (const auto& v : require(j, "vertices", "automaton file")) {
        if (!v.is_string()) throw io_error("vertex names must be strings");
        vertices.push_back(v.get<std::string>());
    }
    const std::string origin_name = require(j, "origin", "automaton file").get<std::string>();
    GeneratorTable gens = generators_from_json(require(j, "generators", "automaton file"),
                                               "automaton file");

    int origin = -1;
    for (std::size_t v = 0; v < vertices.size(); ++v)
        if (vertices[v] == origin_name) origin = static_cast<int>(v);
    if (origin < 0) throw io_error("origin '" + origin_name + "' is not a listed vertex");

    MarkovAutomaton a(vertices, origin, gens);
    for (const auto& e : require(j, "edges", "automaton file")) {
        reject_unknown_fields(e, {"from", "to", "label"}, "edge entry");
        const std::string from = require(e, "from", "edge").get<std::string>();
        const std::string to = require(e, "to", "edge").get<std::string>();
        const std::string label = require(e, "label", "edge").get<std::string>();
        const int fv = a.vertex_id(from), tv = a.vertex_id(to), lg = gens.id_of(label);
        if (fv < 0) throw io_error("edge references unknown vertex '" + from + "'");
        if (tv < 0) throw io_error("edge references unknown vertex '" + to + "'");
        if (lg < 0) throw io_error("edge references unknown generator '" + label + "'");
        a.add_edge(fv, tv, lg); // invariant violations surface here, naming the edge
    }
    return a;
}

LoadedAction load_action(const std::string& path, const GeneratorTable& expected, double tol) {
    const json j = parse_file(path);
    reject_unknown_fields(j, {"version", "dim", "state", "generators"}, "action file");
    const int version = require(j, "version", "action file").get<int>();
    if (version != 1) throw io_error("unsupported action file version " + std::to_string(version));
    const int dim = require(j, "dim", "action file").get<int>();
    if (dim < 1) throw io_error("action file dim must be >= 1");

    AlgebraState state(complex_matrix_from_json(require(j, "state", "action file"), dim,
                                                "action file state"),
                       tol);

    std::vector<CMat> unitaries(expected.size());
    std::vector<bool> seen(expected.size(), false);
    for (const auto& g : require(j, "generators", "action file")) {
        reject_unknown_fields(g, {"name", "unitary"}, "action generator entry");
        const std::string name = require(g, "name", "action generator").get<std::string>();
        const int id = expected.id_of(name);
        if (id < 0) throw io_error("action file assigns unknown generator '" + name + "'");
        if (seen[id]) throw io_error("action file assigns generator '" + name + "' twice");
        seen[id] = true;
        unitaries[id] = complex_matrix_from_json(require(g, "unitary", "action generator"), dim,
                                                 "unitary of '" + name + "'");
    }
    for (int i = 0; i < expected.size(); ++i)
        if (!seen[i])
            throw io_error("action file is missing generator '" + expected.name(i) + "'");

    std::vector<Automorphism> autos;
    autos.reserve(unitaries.size());
    for (int i = 0; i < expected.size(); ++i) {
        try {
            autos.emplace_back(unitaries[i], tol);
        } catch (const input_error&) {
            throw input_error("unitary of generator '" + expected.name(i) + "' is not unitary");
        }
    }
    ActionAssignment assignment(expected, std::move(autos), tol);
    assignment.require_state_invariance(state, tol);
    return LoadedAction{std::move(state), std::move(assignment)};
}

void save_action(const std::string& path, const AlgebraState& s, const ActionAssignment& a) {
    json j;
    j["version"] = 1;
    j["dim"] = s.dim();
    j["state"] = complex_matrix_to_json(s.density());
    j["generators"] = json::array();
    const GeneratorTable& gens = a.generators();
    for (int g = 0; g < gens.size(); ++g)
        j["generators"].push_back(
            {{"name", gens.name(g)}, {"unitary", complex_matrix_to_json(a.of(g).unitary())}});
    write_file(path, j);
}

void save_observable(const std::string& path, const CMat& x) {
    json j;
    j["version"] = 1;
    j["dim"] = static_cast<int>(x.rows());
    j["matrix"] = complex_matrix_to_json(x);
    write_file(path, j);
}

CMat load_observable(const std::string& path) {
    const json j = parse_file(path);
    reject_unknown_fields(j, {"version", "dim", "matrix"}, "observable file");
    const int version = require(j, "version", "observable file").get<int>();
    if (version != 1)
        throw io_error("unsupported observable file version " + std::to_string(version));
    const int dim = require(j, "dim", "observable file").get<int>();
    return complex_matrix_from_json(require(j, "matrix", "observable file"), dim,
                                    "observable matrix");
}

} // namespace covmark
