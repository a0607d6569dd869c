#pragma once

#include <string>

#include <json.hpp>

#include "pgc/analysis.hpp"
#include "pgc/codes.hpp"
#include "pgc/constructions.hpp"
#include "pgc/minwt.hpp"
#include "pgc/projgeom.hpp"

// JSON wire formats. Keys are emitted in sorted order, so identical
// inputs serialize byte-identically.
namespace pgc::io {

using json = nlohmann::json;

json to_json(const GeometryDescriptor& g);
GeometryDescriptor geometry_from_json(const json& j);

json to_json(const FieldSpec& f);  // {"p","e","modulus"}

json to_json(const Codeword& c);
Codeword codeword_from_json(const json& j);

json to_json(const PointSet& s);
PointSet pointset_from_json(const json& j);

json subspace_to_json(const Subspace& s);  // list of coordinate rows
Subspace subspace_from_json(const json& j);

json to_json(const CylinderDescriptor& d);
CylinderDescriptor cylinder_from_json(const json& j);

json to_json(const MinWeightResult& r, bool include_witnesses);
json to_json(const BoundsReport& r);
json to_json(const HaemersCheck& h);
json to_json(const CylinderRecognition& r);

std::string spectrum_csv(const SecantSpectrum& s);  // "i,n_i" rows sorted by i

// dimensions header plus row-major entries; p = 2 renders as a 0/1 grid
std::string pmatrix_text(const PMatrix& m);

json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const json& j);

}  // namespace pgc::io
