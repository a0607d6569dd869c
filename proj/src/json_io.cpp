#include "pgc/json_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace pgc::io {

json to_json(const GeometryDescriptor& g) { return json{{"n", g.n}, {"p", g.p}, {"e", g.e}}; }

GeometryDescriptor geometry_from_json(const json& j) {
    GeometryDescriptor g;
    g.n = j.at("n").get<std::uint64_t>();
    g.p = j.at("p").get<std::uint64_t>();
    g.e = j.at("e").get<std::uint64_t>();
    return g;
}

json to_json(const FieldSpec& f) {
    return json{{"p", f.p()}, {"e", f.e()}, {"modulus", f.modulus()}};
}

json to_json(const Codeword& c) {
    return json{{"geometry", to_json(c.geometry)}, {"values", c.values}};
}

Codeword codeword_from_json(const json& j) {
    Codeword c;
    c.geometry = geometry_from_json(j.at("geometry"));
    c.values = j.at("values").get<std::vector<std::uint8_t>>();
    std::uint64_t expect = theta(int(c.geometry.n), c.geometry.q());
    if (c.values.size() != expect) throw std::invalid_argument("codeword length does not match the geometry");
    for (std::uint8_t v : c.values)
        if (v >= c.geometry.p) throw std::invalid_argument("codeword value out of range [0,p)");
    return c;
}

json to_json(const PointSet& s) {
    return json{{"geometry", to_json(s.geometry)}, {"ids", s.ids}};
}

PointSet pointset_from_json(const json& j) {
    PointSet s;
    s.geometry = geometry_from_json(j.at("geometry"));
    s.ids = j.at("ids").get<std::vector<std::uint64_t>>();
    std::uint64_t npoints = theta(int(s.geometry.n), s.geometry.q());
    for (std::size_t i = 0; i < s.ids.size(); ++i) {
        if (s.ids[i] >= npoints) throw std::invalid_argument("point id out of range");
        if (i > 0 && s.ids[i] <= s.ids[i - 1])
            throw std::invalid_argument("point ids must be strictly increasing");
    }
    return s;
}

json subspace_to_json(const Subspace& s) {
    json rows = json::array();
    if (s.dim >= 0) {
        std::size_t m = s.rows.size() / std::size_t(s.dim + 1);
        for (int i = 0; i <= s.dim; ++i)
            rows.push_back(std::vector<std::uint64_t>(s.rows.begin() + std::ptrdiff_t(i) * std::ptrdiff_t(m),
                                                      s.rows.begin() + std::ptrdiff_t(i + 1) * std::ptrdiff_t(m)));
    }
    return rows;
}

Subspace subspace_from_json(const json& j) {
    Subspace s;
    if (!j.is_array()) throw std::invalid_argument("subspace must be a list of coordinate rows");
    s.dim = int(j.size()) - 1;
    for (const auto& row : j) {
        auto vals = row.get<std::vector<std::uint64_t>>();
        s.rows.insert(s.rows.end(), vals.begin(), vals.end());
    }
    return s;
}

json to_json(const CylinderDescriptor& d) {
    json j;
    j["vertex"] = subspace_to_json(d.vertex);
    j["base_plane"] = subspace_to_json(d.base_plane);
    if (d.base_word.has_value())
        j["base"] = to_json(*d.base_word);
    else if (d.base_set.has_value())
        j["base"] = to_json(*d.base_set);
    else
        j["base"] = nullptr;
    return j;
}

CylinderDescriptor cylinder_from_json(const json& j) {
    CylinderDescriptor d;
    d.vertex = subspace_from_json(j.at("vertex"));
    d.base_plane = subspace_from_json(j.at("base_plane"));
    const json& base = j.at("base");
    if (base.contains("values"))
        d.base_word = codeword_from_json(base);
    else
        d.base_set = pointset_from_json(base);
    return d;
}

json to_json(const MinWeightResult& r, bool include_witnesses) {
    json j;
    j["d"] = r.d;
    j["method"] = r.method == MinWeightResult::Method::enumeration ? "enumeration" : "brouwer_zimmermann";
    j["exhaustive"] = r.exhaustive;
    j["witness_count"] = r.witnesses.size();
    json w = json::array();
    if (include_witnesses)
        for (const Codeword& c : r.witnesses) w.push_back(to_json(c));
    else if (!r.witnesses.empty())
        w.push_back(to_json(r.witnesses.front()));
    j["witnesses"] = std::move(w);
    return j;
}

namespace {
json opt(const std::optional<std::uint64_t>& v) { return v.has_value() ? json(*v) : json(nullptr); }
}  // namespace

json to_json(const BoundsReport& r) {
    json j;
    j["n"] = r.n;
    j["q"] = r.q;
    j["k"] = r.k;
    j["reduced_params"] = {r.reduced_params.first, r.reduced_params.second};
    j["d2_known"] = opt(r.d2_known);
    j["bagchi_inamdar"] = r.bagchi_inamdar;
    j["csajbok"] = opt(r.csajbok);
    j["ckdr"] = opt(r.ckdr);
    j["upper_lsv"] = r.upper_lsv;
    j["main_wt"] = opt(r.main_wt);
    j["p_square_lower"] = opt(r.p_square_lower);
    return j;
}

json to_json(const HaemersCheck& h) {
    return json{{"lhs", h.lhs}, {"rhs", h.rhs}, {"feasible", h.feasible}};
}

json to_json(const CylinderRecognition& r) {
    json j;
    j["is_cylinder"] = r.is_cylinder;
    j["vertex"] = r.vertex.has_value() ? subspace_to_json(*r.vertex) : json(nullptr);
    j["base_plane"] = r.base_plane.has_value() ? subspace_to_json(*r.base_plane) : json(nullptr);
    j["base"] = r.base.has_value() ? to_json(*r.base) : json(nullptr);
    j["vertex_set"] = r.vertex_set;
    return j;
}

std::string spectrum_csv(const SecantSpectrum& s) {
    std::ostringstream out;
    for (const auto& [i, n] : s.counts) out << i << "," << n << "\n";
    return out.str();
}

std::string pmatrix_text(const PMatrix& m) {
    std::ostringstream out;
    out << m.rows << " " << m.cols << " " << m.p << "\n";
    for (std::uint64_t r = 0; r < m.rows; ++r) {
        for (std::uint64_t c = 0; c < m.cols; ++c) {
            if (m.p != 2 && c > 0) out << " ";
            out << unsigned(m.at(r, c));
        }
        out << "\n";
    }
    return out.str();
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& err) {
        throw std::invalid_argument("malformed JSON in " + path + ": " + err.what());
    }
    return j;
}

void save_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write " + path);
    out << j.dump(2) << "\n";
}

}  // namespace pgc::io
