// Copyright (c) 2026 the bcl authors
//
// This code is released under the
// Apache License Version 2.0 http://www.apache.org/licenses/.

#include "bcl/json_io.hpp"

#include <stdexcept>

namespace bcl {

Json space_to_json(const SpaceParams& params) {
  Json j;
  j["theta"] = params.theta_exact().str();
  Json ps = Json::array();
  for (const auto& p : params.exponents()) ps.push_back(p.str());
  j["ps"] = ps;
  return j;
}

SpaceParams space_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("theta") || !j.contains("ps"))
    throw std::invalid_argument("space json: expected object with 'theta' and 'ps'");
  const Rational theta = Rational::parse(j.at("theta").get<std::string>());
  std::vector<ExtExponent> ps;
  for (const auto& e : j.at("ps")) ps.push_back(ExtExponent::parse(e.get<std::string>()));
  return make_space(theta, ps);
}

Json vector_to_json(const SparseVector& x) {
  Json coords = Json::array();
  for (const auto& c : x.coords()) {
    Json e;
    e["i"] = c.index;
    e["v"] = c.value;
    coords.push_back(e);
  }
  Json j;
  j["coords"] = coords;
  return j;
}

SparseVector vector_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("coords"))
    throw std::invalid_argument("vector json: expected object with 'coords'");
  std::vector<Coord> coords;
  for (const auto& e : j.at("coords"))
    coords.push_back({e.at("i").get<std::int64_t>(), e.at("v").get<double>()});
  return SparseVector::from_coords(std::move(coords));
}

Json functional_to_json(const Functional& f) {
  Json j;
  if (f.is_basis()) {
    Json b;
    b["i"] = f.leaf().index;
    b["sign"] = f.leaf().sign;
    j["basis"] = b;
    return j;
  }
  const auto& node = f.as_node();
  Json n;
  n["order"] = node.order;
  if (node.size)
    n["size"] = *node.size;
  else
    n["size"] = nullptr;
  n["coeffs"] = node.coeffs;
  Json children = Json::array();
  for (const auto& c : node.children) children.push_back(functional_to_json(c));
  n["children"] = children;
  j["node"] = n;
  return j;
}

Functional functional_from_json(const Json& j) {
  if (j.is_object() && j.contains("basis")) {
    const auto& b = j.at("basis");
    return Functional::basis(b.at("i").get<std::int64_t>(), b.at("sign").get<int>());
  }
  if (j.is_object() && j.contains("node")) {
    const auto& n = j.at("node");
    std::optional<std::int64_t> size;
    if (n.contains("size") && !n.at("size").is_null())
      size = n.at("size").get<std::int64_t>();
    std::vector<double> coeffs = n.at("coeffs").get<std::vector<double>>();
    std::vector<Functional> children;
    for (const auto& c : n.at("children")) children.push_back(functional_from_json(c));
    return Functional::node(n.at("order").get<int>(), size, std::move(coeffs),
                            std::move(children));
  }
  throw std::invalid_argument("functional json: expected 'basis' or 'node'");
}

Json certificate_to_json(const NormCertificate& cert) {
  Json j;
  j["lower"] = cert.lower;
  j["upper"] = cert.upper;
  j["witness"] = functional_to_json(cert.witness);
  Json stats;
  stats["memo_entries"] = cert.stats.memo_entries;
  stats["nodes_explored"] = cert.stats.nodes_explored;
  j["stats"] = stats;
  return j;
}

Json krivine_to_json(const KrivineConstants& c) {
  Json j;
  j["p"] = c.p.str();
  j["k"] = c.k;
  j["N"] = c.N;
  j["eps"] = c.eps;
  j["Theta"] = c.Theta;
  j["M"] = c.M;
  j["K"] = c.K;
  return j;
}

Json ineq_checks_to_json(const std::vector<IneqCheck>& checks) {
  Json arr = Json::array();
  for (const auto& c : checks) {
    Json j;
    j["name"] = c.name;
    j["lhs"] = c.lhs;
    j["rhs"] = c.rhs;
    j["pass"] = c.pass;
    j["margin"] = c.margin;
    arr.push_back(j);
  }
  return arr;
}

}  // namespace bcl
