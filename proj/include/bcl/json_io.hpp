// Copyright (c) 2026 the bcl authors
//
// This code is released under the
// Apache License Version 2.0 http://www.apache.org/licenses/.

#ifndef BCL_JSON_IO_HPP_
#define BCL_JSON_IO_HPP_

#include <string>

#include "json.hpp"

#include "bcl/functional.hpp"
#include "bcl/krivine.hpp"
#include "bcl/norm_engine.hpp"
#include "bcl/space.hpp"
#include "bcl/sparse_vector.hpp"

namespace bcl {

using Json = nlohmann::ordered_json;

// {"theta": "1/4", "ps": ["1", "3/2", "inf"]}
Json space_to_json(const SpaceParams& params);
SpaceParams space_from_json(const Json& j);

// {"coords": [{"i": 1, "v": 0.5}, ...]}
Json vector_to_json(const SparseVector& x);
SparseVector vector_from_json(const Json& j);

// {"basis": {"i": 3, "sign": 1}} or
// {"node": {"order": 1, "size": null, "coeffs": [...], "children": [...]}}
Json functional_to_json(const Functional& f);
Functional functional_from_json(const Json& j);

// {"lower": ..., "upper": ..., "witness": ..., "stats": {...}}. Wall time is
// kept out of the serialized stats so identical runs produce identical bytes.
Json certificate_to_json(const NormCertificate& cert);

Json krivine_to_json(const KrivineConstants& c);
Json ineq_checks_to_json(const std::vector<IneqCheck>& checks);

}  // namespace bcl

#endif  // BCL_JSON_IO_HPP_
