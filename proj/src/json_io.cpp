#include "centext/json_io.hpp"

namespace centext {

Json int_to_json(const Int& x) {
  if (x.fits_slong_p()) return Json(x.get_si());
  return Json(x.get_str());
}

Int int_from_json(const Json& j) {
  if (j.is_number_integer()) return Int(j.get<long>());
  if (j.is_string()) return Int(j.get<std::string>());
  throw std::invalid_argument("expected an integer or a decimal string");
}

Json group_to_json(const AbelianGroup& g) {
  Json factors = Json::array();
  for (const Int& d : g.factors()) factors.push_back(int_to_json(d));
  return Json{{"factors", factors}};
}

AbelianGroup group_from_json(const Json& j) {
  const Json& factors = j.is_array() ? j : j.at("factors");
  std::vector<Int> f;
  for (const Json& d : factors) f.push_back(int_from_json(d));
  return AbelianGroup(std::move(f));
}

Json element_to_json(const GroupElement& x) {
  Json coords = Json::array();
  for (const Int& c : x.coords) coords.push_back(int_to_json(c));
  return coords;
}

GroupElement element_from_json(const Json& j, const AbelianGroup& parent) {
  std::vector<Int> coords;
  for (const Json& c : j) coords.push_back(int_from_json(c));
  return parent.make(std::move(coords));
}

Json cocycle_to_json(const Cocycle& c) {
  const long n = c.order_a();
  Json table = Json::array();
  for (long x = 0; x < n; ++x) {
    Json row = Json::array();
    for (long y = 0; y < n; ++y) row.push_back(element_to_json(c.at(x, y)));
    table.push_back(std::move(row));
  }
  return Json{{"a", group_to_json(c.group_a())}, {"b", group_to_json(c.group_b())},
              {"table", table}};
}

Cocycle cocycle_from_json(const Json& j) {
  AbelianGroup a = group_from_json(j.at("a"));
  AbelianGroup b = group_from_json(j.at("b"));
  const long n = to_long(a.order(), "cocycle_from_json");
  const Json& table = j.at("table");
  if (static_cast<long>(table.size()) != n) {
    throw std::invalid_argument("cocycle table must have |A| rows");
  }
  IntMat m(Index(n) * Index(n), b.rank());
  for (long x = 0; x < n; ++x) {
    const Json& row = table.at(static_cast<size_t>(x));
    if (static_cast<long>(row.size()) != n) {
      throw std::invalid_argument("cocycle table must have |A| columns");
    }
    for (long y = 0; y < n; ++y) {
      GroupElement v = element_from_json(row.at(static_cast<size_t>(y)), b);
      for (Index k = 0; k < b.rank(); ++k) {
        m(Index(x) * n + y, k) = v.coords[static_cast<size_t>(k)];
      }
    }
  }
  return Cocycle(a, b, std::move(m));
}

Json bilinear_to_json(const BilinearMap& b) {
  const Index k = b.group_a().rank();
  Json matrix = Json::array();
  for (Index i = 0; i < k; ++i) {
    Json row = Json::array();
    for (Index j = 0; j < k; ++j) row.push_back(element_to_json(b.at_generators(i, j)));
    matrix.push_back(std::move(row));
  }
  return Json{{"a", group_to_json(b.group_a())}, {"b", group_to_json(b.group_b())},
              {"matrix", matrix}};
}

BilinearMap bilinear_from_json(const Json& j) {
  AbelianGroup a = group_from_json(j.at("a"));
  AbelianGroup b = group_from_json(j.at("b"));
  const Index k = a.rank();
  const Json& matrix = j.at("matrix");
  if (static_cast<Index>(matrix.size()) != k) {
    throw std::invalid_argument("bilinear matrix must have rank(A) rows");
  }
  IntMat entries(k * k, b.rank());
  for (Index i = 0; i < k; ++i) {
    const Json& row = matrix.at(static_cast<size_t>(i));
    if (static_cast<Index>(row.size()) != k) {
      throw std::invalid_argument("bilinear matrix must have rank(A) columns");
    }
    for (Index jj = 0; jj < k; ++jj) {
      GroupElement v = element_from_json(row.at(static_cast<size_t>(jj)), b);
      for (Index t = 0; t < b.rank(); ++t) entries(i * k + jj, t) = v.coords[static_cast<size_t>(t)];
    }
  }
  return BilinearMap(a, b, std::move(entries));
}

Json cochain_to_json(const CochainMap& h) {
  const long n = to_long(h.group_a().order(), "cochain_to_json");
  Json values = Json::array();
  for (long x = 0; x < n; ++x) values.push_back(element_to_json(h.at(x)));
  return Json{{"a", group_to_json(h.group_a())}, {"b", group_to_json(h.group_b())},
              {"values", values}};
}

CochainMap cochain_from_json(const Json& j) {
  AbelianGroup a = group_from_json(j.at("a"));
  AbelianGroup b = group_from_json(j.at("b"));
  const long n = to_long(a.order(), "cochain_from_json");
  const Json& values = j.at("values");
  if (static_cast<long>(values.size()) != n) {
    throw std::invalid_argument("cochain must have |A| values");
  }
  IntMat m(Index(n), b.rank());
  for (long x = 0; x < n; ++x) {
    GroupElement v = element_from_json(values.at(static_cast<size_t>(x)), b);
    for (Index k = 0; k < b.rank(); ++k) m(Index(x), k) = v.coords[static_cast<size_t>(k)];
  }
  return CochainMap(a, b, std::move(m));
}

std::string rat_to_string(const Rat& r) {
  Rat q = qz_reduce(r);
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rat rat_from_string(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) {
    throw std::invalid_argument("rational must be written num/den");
  }
  Rat r(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
  r.canonicalize();
  return qz_reduce(r);
}

Json qzvec_to_json(const RatVec& v) {
  Json arr = Json::array();
  for (Index i = 0; i < v.size(); ++i) arr.push_back(rat_to_string(v(i)));
  return arr;
}

RatVec qzvec_from_json(const Json& j) {
  RatVec v(static_cast<Index>(j.size()));
  for (Index i = 0; i < v.size(); ++i) {
    v(i) = rat_from_string(j.at(static_cast<size_t>(i)).get<std::string>());
  }
  return v;
}

Json validation_to_json(const CocycleValidation& v) {
  Json out{{"normalized", v.normalized}, {"identity", v.identity}, {"pass", v.pass()}};
  if (v.normalization_violation) {
    out["normalization_violation"] =
        Json::array({v.normalization_violation->first, v.normalization_violation->second});
  }
  if (v.identity_violation) {
    out["identity_violation"] = Json::array(
        {(*v.identity_violation)[0], (*v.identity_violation)[1], (*v.identity_violation)[2]});
  }
  return out;
}

Json structure_to_json(const StructureReport& r) {
  Json histogram = Json::array();
  for (const auto& [order, count] : r.order_histogram) {
    histogram.push_back(Json{{"order", int_to_json(order)}, {"count", int_to_json(count)}});
  }
  return Json{{"order", int_to_json(r.order)},
              {"exponent", int_to_json(r.exponent)},
              {"abelian", r.abelian},
              {"nilpotency_class", r.nilpotency_class},
              {"center_order", int_to_json(r.center_order)},
              {"derived_subgroup", group_to_json(r.derived_invariants)},
              {"abelianization", group_to_json(r.abelianization_invariants)},
              {"order_histogram", histogram}};
}

Json h2_to_json(const H2Description& h) {
  Json reps = Json::array();
  for (const Cocycle& r : h.representatives()) reps.push_back(cocycle_to_json(r));
  return Json{{"a", group_to_json(h.group_a())},
              {"b", group_to_json(h.group_b())},
              {"abstract", group_to_json(h.abstract())},
              {"canonical", group_to_json(canonicalize(h.abstract()).group)},
              {"order", int_to_json(h.order())},
              {"representatives", reps}};
}

Json embedding_to_json(const EmbeddingResult& e) {
  const ExtensionGroup& g = e.source();
  Json j_cols = Json::array();
  for (Index j = 0; j < g.fiber().rank(); ++j) {
    j_cols.push_back(qzvec_to_json(RatVec(e.target().fiber_embedding.col(j))));
  }
  const Index ka = g.base().rank();
  Json lift = Json::array();
  for (Index i = 0; i < ka; ++i) {
    Json row = Json::array();
    for (Index jj = 0; jj < ka; ++jj) row.push_back(qzvec_to_json(e.lifted_bilinear().at_generators(i, jj)));
    lift.push_back(std::move(row));
  }
  Json values = Json::array();
  for (const auto& x : g.elements()) {
    values.push_back(Json{{"element", Json::array({element_to_json(x.a), element_to_json(x.b)})},
                          {"image", Json::array({element_to_json(g.project(x)),
                                                 qzvec_to_json(e.map_value(x))})}});
  }
  Json witness = Json::array();
  for (const RatVec& w : e.section_witness()) witness.push_back(qzvec_to_json(w));
  return Json{{"group", Json{{"a", group_to_json(g.base())}, {"b", group_to_json(g.fiber())}}},
              {"divisible_rank", e.divisible_rank()},
              {"fiber_embedding", j_cols},
              {"lifted_bilinear", lift},
              {"map", values},
              {"section_witness", witness},
              {"image_subgroup", group_to_json(e.image_invariants())},
              {"target_abelian", e.target_abelian()},
              {"lift_null_class", e.lifted_bilinear_null()},
              {"witness_identity", e.witness_identity_holds()}};
}

Json bilinearization_to_json(const BilinearizationReport& r) {
  Json classes = Json::array();
  for (const auto& v : r.classes) {
    Json coords = Json::array();
    for (const Int& c : v.class_coords) coords.push_back(int_to_json(c));
    classes.push_back(Json{{"class", coords},
                           {"abelian", v.abelian},
                           {"pairing_zero", v.pairing_zero},
                           {"lift_null", v.lift_null},
                           {"witness_exact", v.witness_exact},
                           {"pass", v.pass}});
  }
  return Json{{"classes", classes},
              {"ext_subgroup_matches", r.ext_subgroup_matches},
              {"pass", r.pass}};
}

}  // namespace centext
