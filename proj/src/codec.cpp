#include "homalg/codec.hpp"

#include <json.hpp>

namespace homalg {

namespace {

using J = nlohmann::ordered_json;

[[noreturn]] void parse_fail(const std::string& what) { throw Error("ParseError", what); }
[[noreturn]] void valid_fail(const std::string& what) { throw Error("ValidationError", what); }

// run an owning-module constructor/validator, converting its errors
template <class Fn>
auto validated(Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& e) {
    valid_fail(e.what());
  }
}

// --- scalars -----------------------------------------------------------------

J enc_entry(const FieldSpec& F, int f, const Comp& c) {
  if (F.is_rational(f)) {
    const mpq_class& q = std::get<mpq_class>(c);
    return J(q.get_num().get_str() + "/" + q.get_den().get_str());
  }
  return J(std::get<long long>(c));
}

Comp dec_entry(const FieldSpec& F, int f, const J& j) {
  if (F.is_rational(f)) {
    if (!j.is_string()) parse_fail("rational entry must be a string \"a/b\"");
    const std::string s = j.get<std::string>();
    auto slash = s.find('/');
    if (slash == std::string::npos || slash == 0 || slash + 1 == s.size())
      parse_fail("rational entry must have the form \"a/b\": " + s);
    mpz_class num, den;
    try {
      num = mpz_class(s.substr(0, slash));
      den = mpz_class(s.substr(slash + 1));
    } catch (const std::invalid_argument&) {
      parse_fail("malformed rational entry: " + s);
    }
    if (sgn(den) <= 0) valid_fail("rational denominator must be positive: " + s);
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (g != 1) valid_fail("rational not in lowest terms: " + s);
    return mpq_class(num, den);
  }
  if (!j.is_number_integer()) parse_fail("prime-field entry must be an integer");
  long long v = j.get<long long>();
  if (v < 0 || v >= F.prime(f))
    valid_fail("residue out of range [0," + std::to_string(F.prime(f)) + ")");
  return v;
}

// --- dims and matrices ---------------------------------------------------

J enc_dims(const Dims& d) { return J(d.v); }

Dims dec_dims(const FieldSpec& F, const J& j) {
  if (!j.is_array() || static_cast<int>(j.size()) != F.nf())
    parse_fail("dims must list one entry per field factor");
  Dims d;
  for (const auto& e : j) {
    int v = e.get<int>();
    if (v < 0) valid_fail("negative dimension");
    d.v.push_back(v);
  }
  return d;
}

J enc_mat(const Mat& m) {
  const FieldSpec& F = m.field();
  Dims r = m.rows(), c = m.cols();
  J blocks = J::array();
  for (int f = 0; f < F.nf(); ++f) {
    J rows = J::array();
    for (int i = 0; i < r.at(f); ++i) {
      J row = J::array();
      for (int j = 0; j < c.at(f); ++j) row.push_back(enc_entry(F, f, m.get(f, i, j)));
      rows.push_back(std::move(row));
    }
    blocks.push_back(J{{"shape", J::array({r.at(f), c.at(f)})}, {"rows", std::move(rows)}});
  }
  return blocks;
}

Mat dec_mat(const FieldSpec& F, const J& j) {
  if (!j.is_array() || static_cast<int>(j.size()) != F.nf())
    parse_fail("matrix must list one block per field factor");
  Dims r, c;
  for (const auto& b : j) {
    const auto& shape = b.at("shape");
    r.v.push_back(shape.at(0).get<int>());
    c.v.push_back(shape.at(1).get<int>());
    if (r.v.back() < 0 || c.v.back() < 0) valid_fail("negative matrix shape");
  }
  Mat m(F, r, c);
  for (int f = 0; f < F.nf(); ++f) {
    const auto& rows = j.at(static_cast<size_t>(f)).at("rows");
    if (static_cast<int>(rows.size()) != r.at(f)) parse_fail("row count does not match shape");
    for (int i = 0; i < r.at(f); ++i) {
      const auto& row = rows.at(static_cast<size_t>(i));
      if (static_cast<int>(row.size()) != c.at(f))
        parse_fail("row length does not match shape");
      for (int jj = 0; jj < c.at(f); ++jj)
        m.set(f, i, jj, dec_entry(F, f, row.at(static_cast<size_t>(jj))));
    }
  }
  return m;
}

template <class T, class Enc>
J enc_degree_map(const std::map<int, T>& m, Enc enc) {
  J o = J::object();
  for (const auto& [n, v] : m) o[std::to_string(n)] = enc(v);
  return o;
}

int dec_degree_key(const std::string& s) {
  try {
    size_t pos = 0;
    int n = std::stoi(s, &pos);
    if (pos != s.size()) parse_fail("bad degree key: " + s);
    return n;
  } catch (const std::logic_error&) {
    parse_fail("bad degree key: " + s);
  }
}

// --- fields and complexes ------------------------------------------------

J enc_field(const FieldSpec& F) { return J{{"factors", F.factors}}; }

FieldSpec dec_field(const J& j) {
  std::vector<long long> factors = j.at("factors").get<std::vector<long long>>();
  return validated([&] { return FieldSpec(std::move(factors)); });
}

J enc_complex(const ChainComplex& X) {
  return J{{"field", enc_field(X.F)},
           {"support", J::array({X.lo, X.hi})},
           {"dims", enc_degree_map(X.dims_, enc_dims)},
           {"d", enc_degree_map(X.d_, enc_mat)}};
}

ChainComplex dec_complex(const J& j) {
  FieldSpec F = dec_field(j.at("field"));
  int lo = j.at("support").at(0).get<int>();
  int hi = j.at("support").at(1).get<int>();
  std::map<int, Dims> dims;
  for (const auto& [k, v] : j.at("dims").items()) dims[dec_degree_key(k)] = dec_dims(F, v);
  std::map<int, Mat> d;
  for (const auto& [k, v] : j.at("d").items()) d.emplace(dec_degree_key(k), dec_mat(F, v));
  return validated([&] { return make_complex(F, lo, hi, std::move(dims), std::move(d)); });
}

J enc_levels(const std::map<int, Mat>& levels) {
  return J{{"levels", enc_degree_map(levels, enc_mat)}};
}

std::map<int, Mat> dec_levels(const FieldSpec& F, const J& j) {
  std::map<int, Mat> levels;
  for (const auto& [k, v] : j.at("levels").items())
    levels.emplace(dec_degree_key(k), dec_mat(F, v));
  return levels;
}

J enc_map(const ChainMap& f) {
  return J{{"src", enc_complex(f.src)},
           {"dst", enc_complex(f.dst)},
           {"levels", enc_degree_map(f.levels, enc_mat)}};
}

ChainMap dec_map(const J& j) {
  ChainComplex src = dec_complex(j.at("src"));
  ChainComplex dst = dec_complex(j.at("dst"));
  std::map<int, Mat> levels = dec_levels(src.F, j);
  return validated(
      [&] { return make_chain_map(std::move(src), std::move(dst), std::move(levels)); });
}

// --- simplicial modules ----------------------------------------------------

J enc_simplicial(const SimplicialModule& A) {
  return J{{"normal", enc_complex(A.normal)}, {"level_bound", A.level_bound}};
}

SimplicialModule dec_simplicial(const J& j) {
  SimplicialModule A{dec_complex(j.at("normal")), j.at("level_bound").get<int>()};
  if (A.level_bound < 0) valid_fail("negative level bound");
  for (int n = A.normal.lo; n < 0; ++n)
    if (!A.normal.dim(n).is_zero()) valid_fail("simplicial normal form has negative support");
  if (A.normal.hi > A.level_bound)
    valid_fail("simplicial normal form extends past the level bound");
  return A;
}

// --- coalgebras and comodules -----------------------------------------------

J enc_coalgebra(const DGCoalgebra& C) {
  return J{{"carrier", enc_complex(C.carrier)},
           {"delta", enc_levels(C.delta.levels)},
           {"epsilon", enc_levels(C.epsilon.levels)}};
}

DGCoalgebra dec_coalgebra(const J& j) {
  DGCoalgebra C;
  C.carrier = dec_complex(j.at("carrier"));
  const FieldSpec& F = C.carrier.F;
  C.delta = validated([&] {
    return make_chain_map(C.carrier, tensor(C.carrier, C.carrier), dec_levels(F, j.at("delta")));
  });
  C.epsilon = validated([&] {
    return make_chain_map(C.carrier, unit_complex(F), dec_levels(F, j.at("epsilon")));
  });
  if (!validate_coalgebra(C).ok()) valid_fail("coalgebra axioms fail");
  return C;
}

J enc_comodule(const DGComodule& X) {
  return J{{"coalgebra", enc_coalgebra(X.coalgebra)},
           {"carrier", enc_complex(X.carrier)},
           {"rho", enc_levels(X.rho.levels)}};
}

DGComodule dec_comodule(const J& j) {
  DGComodule X;
  X.coalgebra = dec_coalgebra(j.at("coalgebra"));
  X.carrier = dec_complex(j.at("carrier"));
  X.rho = validated([&] {
    return make_chain_map(X.carrier, tensor(X.carrier, X.coalgebra.carrier),
                          dec_levels(X.carrier.F, j.at("rho")));
  });
  if (!validate_comodule(X).ok()) valid_fail("comodule axioms fail");
  return X;
}

J enc_cmap(const DGComoduleMap& f) {
  return J{{"src", enc_comodule(f.src)},
           {"dst", enc_comodule(f.dst)},
           {"levels", enc_degree_map(f.map.levels, enc_mat)}};
}

DGComoduleMap dec_cmap(const J& j) {
  DGComodule src = dec_comodule(j.at("src"));
  DGComodule dst = dec_comodule(j.at("dst"));
  std::map<int, Mat> levels = dec_levels(src.carrier.F, j);
  return validated([&] {
    ChainMap f = make_chain_map(src.carrier, dst.carrier, std::move(levels));
    return make_comodule_map(std::move(src), std::move(dst), std::move(f));
  });
}

// --- towers and tables ------------------------------------------------------

template <class T, class Enc>
J enc_vec(const std::vector<T>& v, Enc enc) {
  J a = J::array();
  for (const auto& x : v) a.push_back(enc(x));
  return a;
}

J enc_tower(const PostnikovTower& t) {
  return J{{"coalgebra", enc_coalgebra(t.coalgebra)},
           {"vdim", enc_vec(t.vdim, enc_dims)},
           {"stages", enc_vec(t.stages, enc_comodule)},
           {"structure", enc_vec(t.structure, enc_cmap)},
           {"disk_proj", enc_vec(t.disk_proj, enc_cmap)},
           {"attach", enc_vec(t.attach, enc_cmap)},
           {"j", enc_vec(t.j, enc_cmap)}};
}

PostnikovTower dec_tower(const J& j) {
  PostnikovTower t;
  t.coalgebra = dec_coalgebra(j.at("coalgebra"));
  const FieldSpec& F = t.coalgebra.carrier.F;
  for (const auto& e : j.at("vdim")) t.vdim.push_back(dec_dims(F, e));
  for (const auto& e : j.at("stages")) t.stages.push_back(dec_comodule(e));
  for (const auto& e : j.at("structure")) t.structure.push_back(dec_cmap(e));
  for (const auto& e : j.at("disk_proj")) t.disk_proj.push_back(dec_cmap(e));
  for (const auto& e : j.at("attach")) t.attach.push_back(dec_cmap(e));
  for (const auto& e : j.at("j")) t.j.push_back(dec_cmap(e));
  size_t s = t.stages.size();
  if (s < 1 || t.j.size() != s || t.structure.size() != s - 1 ||
      t.disk_proj.size() != s - 1 || t.attach.size() != s - 1 || t.vdim.size() != s - 1)
    valid_fail("tower component counts are inconsistent");
  return t;
}

J enc_table(const CotorTable& t) {
  return J{{"coalgebra", enc_coalgebra(t.coalgebra)},
           {"x", enc_comodule(t.x)},
           {"y", enc_comodule(t.y)},
           {"max_degree", t.max_degree},
           {"method", t.method},
           {"dims", enc_vec(t.dims, enc_dims)}};
}

CotorTable dec_table(const J& j) {
  CotorTable t;
  t.coalgebra = dec_coalgebra(j.at("coalgebra"));
  t.x = dec_comodule(j.at("x"));
  t.y = dec_comodule(j.at("y"));
  t.max_degree = j.at("max_degree").get<int>();
  t.method = j.at("method").get<std::string>();
  if (t.method != "postnikov" && t.method != "cobar") valid_fail("unknown method tag");
  const FieldSpec& F = t.coalgebra.carrier.F;
  for (const auto& e : j.at("dims")) t.dims.push_back(dec_dims(F, e));
  if (t.max_degree < 0 || static_cast<int>(t.dims.size()) != t.max_degree + 1)
    valid_fail("table must list one entry per degree in [0, max_degree]");
  return t;
}

}  // namespace

Document document_of(FieldSpec f) { return Document{"field", std::move(f)}; }
Document document_of(ChainComplex x) { return Document{"complex", std::move(x)}; }
Document document_of(ChainMap f) { return Document{"map", std::move(f)}; }
Document document_of(SimplicialModule a) { return Document{"simplicial", std::move(a)}; }
Document document_of(DGCoalgebra c) { return Document{"coalgebra", std::move(c)}; }
Document document_of(DGComodule x) { return Document{"comodule", std::move(x)}; }
Document document_of(PostnikovTower t) { return Document{"tower", std::move(t)}; }
Document document_of(CotorTable t) { return Document{"table", std::move(t)}; }

std::string encode(const Document& doc) {
  J payload = std::visit(
      [](const auto& x) -> J {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, FieldSpec>) return enc_field(x);
        if constexpr (std::is_same_v<T, ChainComplex>) return enc_complex(x);
        if constexpr (std::is_same_v<T, ChainMap>) return enc_map(x);
        if constexpr (std::is_same_v<T, SimplicialModule>) return enc_simplicial(x);
        if constexpr (std::is_same_v<T, DGCoalgebra>) return enc_coalgebra(x);
        if constexpr (std::is_same_v<T, DGComodule>) return enc_comodule(x);
        if constexpr (std::is_same_v<T, PostnikovTower>) return enc_tower(x);
        if constexpr (std::is_same_v<T, CotorTable>) return enc_table(x);
      },
      doc.payload);
  J top{{"kind", doc.kind}, {"version", kCodecVersion}, {"payload", std::move(payload)}};
  return top.dump(2) + "\n";
}

Document decode(const std::string& text) {
  J j;
  try {
    j = J::parse(text);
  } catch (const J::parse_error& e) {
    parse_fail(e.what());
  }
  try {
    int version = j.at("version").get<int>();
    if (version != kCodecVersion)
      throw Error("UnknownVersion", "unsupported document version " + std::to_string(version));
    std::string kind = j.at("kind").get<std::string>();
    const J& p = j.at("payload");
    if (kind == "field") return Document{kind, dec_field(p)};
    if (kind == "complex") return Document{kind, dec_complex(p)};
    if (kind == "map") return Document{kind, dec_map(p)};
    if (kind == "simplicial") return Document{kind, dec_simplicial(p)};
    if (kind == "coalgebra") return Document{kind, dec_coalgebra(p)};
    if (kind == "comodule") return Document{kind, dec_comodule(p)};
    if (kind == "tower") return Document{kind, dec_tower(p)};
    if (kind == "table") return Document{kind, dec_table(p)};
    parse_fail("unknown document kind: " + kind);
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    parse_fail(e.what());
  }
  parse_fail("unreachable");
}

}  // namespace homalg
