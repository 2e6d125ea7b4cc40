#include "homalg/derived.hpp"

#include <algorithm>
#include <map>
#include <utility>

namespace homalg {

namespace {

Dims prod_dims(const FieldSpec& F, const Dims& a, const Dims& b) {
  Dims r;
  for (int f = 0; f < F.nf(); ++f) r.v.push_back(a.at(f) * b.at(f));
  return r;
}

// offset/length of the rows of the left-degree-p block inside tensor(A,B)_n
std::pair<Dims, Dims> pair_block(const ChainComplex& A, const ChainComplex& B, int n, int p) {
  const FieldSpec& F = A.F;
  Dims off = Dims::zero(F);
  for (int j = A.lo; j < p; ++j) off = off + prod_dims(F, A.dim(j), B.dim(n - j));
  return {off, prod_dims(F, A.dim(p), B.dim(n - p))};
}

void check_derived_preconditions(const DGComodule& X, const DGComodule& Y) {
  if (!(X.coalgebra.carrier == Y.coalgebra.carrier))
    throw Error("CoalgebraMismatch", "derived cotensor needs a common coalgebra");
  CoalgebraReport cr = validate_coalgebra(X.coalgebra);
  if (!cr.ok() || !cr.simply_connected)
    throw Error("NotSimplyConnected", "the coalgebra must be valid and simply connected");
  if (!cr.cocommutative)
    throw Error("NotCocommutative", "the coalgebra must be cocommutative");
  for (const ChainComplex* M : {&X.carrier, &Y.carrier})
    for (int i = M->lo; i < 0; ++i)
      if (!M->dim(i).is_zero())
        throw Error("NegativeSupport", "inputs must be non-negatively supported");
}

// --- the reduced cobar word layout -----------------------------------------
// A word is X_p ⊗ s⁻¹C̄_{q_1+1} ⊗ … ⊗ s⁻¹C̄_{q_s+1} ⊗ Y_r with shifted cobar
// degrees q_i >= 1 (the coideal C̄ lives in degrees >= 2) and total degree
// p + Σq + r. Within one total degree words are ordered by word length s,
// then by p, then lexicographically on the q's.
struct Word {
  int p = 0, r = 0;
  std::vector<int> q;
};

std::vector<int> word_key(const Word& w) {
  std::vector<int> k{w.p, w.r};
  k.insert(k.end(), w.q.begin(), w.q.end());
  return k;
}

struct Layout {
  std::vector<Word> words;
  std::vector<Dims> offsets;
  Dims total;
  std::map<std::vector<int>, int> index;
};

struct CobarData {
  FieldSpec F;
  ChainComplex Xc, Yc, Cc;
  ChainMap rho_x;      // X -> X⊗C
  ChainMap lam_y;      // Y -> C⊗Y, the twisted coaction
  ChainMap delta_map;  // C -> C⊗C

  Dims cbar(int k) const { return k >= 2 ? Cc.dim(k) : Dims::zero(F); }

  Dims word_dims(const Word& w) const {
    Dims d = Xc.dim(w.p);
    for (int qi : w.q) d = prod_dims(F, d, cbar(qi + 1));
    return prod_dims(F, d, Yc.dim(w.r));
  }

  Layout layout(int n) const {
    std::vector<Word> acc;
    std::vector<int> q;
    // all tails (q_1..q_s, r) of a given remaining total degree m
    auto gen = [&](auto&& self, int p, int m) -> void {
      if (!Yc.dim(m).is_zero()) acc.push_back(Word{p, m, q});
      for (int qi = 1; qi <= m; ++qi) {
        if (cbar(qi + 1).is_zero()) continue;
        q.push_back(qi);
        self(self, p, m - qi);
        q.pop_back();
      }
    };
    for (int p = 0; p <= std::min(n, Xc.hi); ++p) {
      if (Xc.dim(p).is_zero()) continue;
      gen(gen, p, n - p);
    }
    std::sort(acc.begin(), acc.end(), [](const Word& a, const Word& b) {
      if (a.q.size() != b.q.size()) return a.q.size() < b.q.size();
      if (a.p != b.p) return a.p < b.p;
      return a.q < b.q;
    });
    Layout L;
    L.total = Dims::zero(F);
    for (auto& w : acc) {
      L.index.emplace(word_key(w), static_cast<int>(L.words.size()));
      L.offsets.push_back(L.total);
      L.total = L.total + word_dims(w);
      L.words.push_back(w);
    }
    return L;
  }

  // identity on the tensor of word positions [from, to); position 0 is X,
  // positions 1..s the cobar factors, position s+1 is Y
  Mat span_identity(const Word& w, int from, int to) const {
    Dims d = Dims::uniform(F, 1);
    for (int t = from; t < to; ++t) {
      if (t == 0)
        d = prod_dims(F, d, Xc.dim(w.p));
      else if (t <= static_cast<int>(w.q.size()))
        d = prod_dims(F, d, cbar(w.q[t - 1] + 1));
      else
        d = prod_dims(F, d, Yc.dim(w.r));
    }
    return Mat::identity(F, d);
  }

  // block of the reduced comultiplication C̄_k -> C̄_u ⊗ C̄_{k-u}
  Mat delta_block(int k, int u) const {
    auto [off, len] = pair_block(Cc, Cc, k, u);
    return delta_map.level(k).row_slice(off, len);
  }

  // the total differential, layout(n) -> layout(n-1)
  Mat differential(const Layout& src, const Layout& dst) const {
    Mat D(F, dst.total, src.total);
    auto add_term = [&](const Word& tw, const Dims& soff, const Mat& m, int sign) {
      auto it = dst.index.find(word_key(tw));
      if (it == dst.index.end()) return;  // zero-dimensional target word
      add_block(D, dst.offsets[static_cast<size_t>(it->second)], soff,
                sign == 1 ? m : m.neg());
    };
    for (size_t wi = 0; wi < src.words.size(); ++wi) {
      const Word& w = src.words[wi];
      const Dims& soff = src.offsets[wi];
      const int s = static_cast<int>(w.q.size());
      // internal differential of X, sign +1
      if (w.p >= 1) {
        Word tw = w;
        tw.p -= 1;
        add_term(tw, soff, Xc.diff(w.p).kron(span_identity(w, 1, s + 2)), 1);
      }
      // internal differential of each shifted cobar factor: the desuspension
      // contributes a global -1 on top of the Koszul sign
      int before = w.p;  // shifted degree to the left of the current factor
      for (int i = 0; i < s; ++i) {
        if (w.q[i] >= 2) {
          Word tw = w;
          tw.q[i] -= 1;
          Mat m = span_identity(w, 0, i + 1)
                      .kron(Cc.diff(w.q[i] + 1))
                      .kron(span_identity(w, i + 2, s + 2));
          add_term(tw, soff, m, (before % 2 == 0) ? -1 : 1);
        }
        before += w.q[i];
      }
      // internal differential of Y, Koszul sign (-1)^{p+Σq}
      if (w.r >= 1) {
        Word tw = w;
        tw.r -= 1;
        add_term(tw, soff, span_identity(w, 0, s + 1).kron(Yc.diff(w.r)),
                 (before % 2 == 0) ? 1 : -1);
      }
      // reduced right coaction X_p -> X_{p'} ⊗ s⁻¹C̄_{p-p'}: the fresh
      // desuspension contributes -1 on top of (-1)^{p'} (so that the double
      // coaction cancels against comultiplication-after-coaction)
      for (int pp = 0; pp + 2 <= w.p; ++pp) {
        if (Xc.dim(pp).is_zero() || cbar(w.p - pp).is_zero()) continue;
        Word tw = w;
        tw.p = pp;
        tw.q.insert(tw.q.begin(), w.p - pp - 1);
        auto [off, len] = pair_block(Xc, Cc, w.p, pp);
        Mat comp = rho_x.level(w.p).row_slice(off, len);
        add_term(tw, soff, comp.kron(span_identity(w, 1, s + 2)),
                 (pp % 2 == 0) ? -1 : 1);
      }
      // reduced comultiplication s⁻¹C̄_{q_i+1} -> s⁻¹C̄_{u+1} ⊗ s⁻¹C̄_{v+1}
      // with u+v = q_i-1; the two desuspensions contribute (-1)^{u+1}
      before = w.p;
      for (int i = 0; i < s; ++i) {
        for (int u = 1; u <= w.q[i] - 2; ++u) {
          int v = w.q[i] - 1 - u;
          if (cbar(u + 1).is_zero() || cbar(v + 1).is_zero()) continue;
          Word tw = w;
          tw.q[i] = u;
          tw.q.insert(tw.q.begin() + i + 1, v);
          Mat m = span_identity(w, 0, i + 1)
                      .kron(delta_block(w.q[i] + 1, u + 1))
                      .kron(span_identity(w, i + 2, s + 2));
          add_term(tw, soff, m, ((before + u + 1) % 2 == 0) ? 1 : -1);
        }
        before += w.q[i];
      }
      // twisted left coaction Y_r -> s⁻¹C̄_cw ⊗ Y_{r-cw}, sign (-1)^{p+Σq}
      for (int cw = 2; cw <= w.r; ++cw) {
        if (cbar(cw).is_zero() || Yc.dim(w.r - cw).is_zero()) continue;
        Word tw = w;
        tw.r = w.r - cw;
        tw.q.push_back(cw - 1);
        auto [off, len] = pair_block(Cc, Yc, w.r, cw);
        Mat comp = lam_y.level(w.r).row_slice(off, len);
        add_term(tw, soff, span_identity(w, 0, s + 1).kron(comp),
                 (before % 2 == 0) ? 1 : -1);
      }
    }
    return D;
  }
};

}  // namespace

bool same_dims(const CotorTable& a, const CotorTable& b) {
  return a.max_degree == b.max_degree && a.dims == b.dims;
}

ChainComplex cobar_complex(const DGComodule& X, const DGComodule& Y, int max_degree) {
  check_derived_preconditions(X, Y);
  const DGCoalgebra& C = X.coalgebra;
  const FieldSpec& F = C.carrier.F;
  if (!(C.carrier.dim(0) == Dims::uniform(F, 1)) || !C.carrier.dim(1).is_zero())
    throw Error("PreconditionViolated",
                "the cobar construction needs C_0 = 𝕜 and C_1 = 0");
  CobarData data{F,
                 X.carrier,
                 Y.carrier,
                 C.carrier,
                 X.rho,
                 compose(twist(Y.carrier, C.carrier), Y.rho),
                 C.delta};
  int hi = max_degree + 1;
  std::vector<Layout> layouts;
  for (int n = 0; n <= hi; ++n) layouts.push_back(data.layout(n));
  std::map<int, Dims> dims;
  std::map<int, Mat> d;
  for (int n = 0; n <= hi; ++n) {
    dims[n] = layouts[static_cast<size_t>(n)].total;
    if (n >= 1)
      d.emplace(n, data.differential(layouts[static_cast<size_t>(n)],
                                     layouts[static_cast<size_t>(n) - 1]));
  }
  return make_complex(F, 0, hi, std::move(dims), std::move(d));
}

CotorTable cobar_oracle(const DGComodule& X, const DGComodule& Y, int max_degree) {
  ChainComplex T = cobar_complex(X, Y, max_degree);
  CotorTable t;
  t.coalgebra = X.coalgebra;
  t.x = X;
  t.y = Y;
  t.max_degree = max_degree;
  t.method = "cobar";
  for (int i = 0; i <= max_degree; ++i) t.dims.push_back(homology(T, i).dim);
  return t;
}

DerivedCotensor derived_cotensor(const DGComodule& X, const DGComodule& Y, int max_degree) {
  check_derived_preconditions(X, Y);
  int n_max = max_degree + 2;
  FibrantReplacement fx = fibrant_replace(X, n_max);
  FibrantReplacement fy = fibrant_replace(Y, n_max);
  Cotensor ct = cotensor(fx.replacement, fy.replacement);
  return DerivedCotensor{ct.comodule.carrier, max_degree};
}

CotorTable cotor_table(const DGComodule& X, const DGComodule& Y, int max_degree,
                       const std::string& method) {
  if (method == "cobar") return cobar_oracle(X, Y, max_degree);
  if (method != "postnikov") throw Error("UnknownMethod", "method must be postnikov or cobar");
  DerivedCotensor dc = derived_cotensor(X, Y, max_degree);
  CotorTable t;
  t.coalgebra = X.coalgebra;
  t.x = X;
  t.y = Y;
  t.max_degree = max_degree;
  t.method = "postnikov";
  for (int i = 0; i <= dc.valid_to; ++i) t.dims.push_back(homology(dc.complex, i).dim);
  return t;
}

DoldKanCotorReport dold_kan_cotor_compare(const DGComodule& X, const DGComodule& Y,
                                          int max_degree) {
  DoldKanCotorReport rep;
  rep.dg_table = cotor_table(X, Y, max_degree, "postnikov");

  const int bound = max_degree + 2;
  SimplicialComodule sX = gamma_comodule(X, bound);
  SimplicialComodule sY = gamma_comodule(Y, bound);
  SimplicialFibrantReplacement rx = simplicial_fibrant_replace(sX, bound);
  SimplicialFibrantReplacement ry = simplicial_fibrant_replace(sY, bound);
  SimplicialCotensor sc = simplicial_cotensor(rx.replacement, ry.replacement);
  rep.simplicial_table.coalgebra = X.coalgebra;
  rep.simplicial_table.x = X;
  rep.simplicial_table.y = Y;
  rep.simplicial_table.max_degree = max_degree;
  rep.simplicial_table.method = "postnikov";
  for (int i = 0; i <= max_degree; ++i)
    rep.simplicial_table.dims.push_back(homotopy_group(sc.comodule.carrier, i).dim);
  rep.tables_equal = same_dims(rep.dg_table, rep.simplicial_table);

  DGComoduleMap cm = comonoidal_map(rx.replacement, ry.replacement, X.coalgebra);
  rep.comparison_quasi_iso = true;
  for (int i = 0; i <= max_degree; ++i) {
    Mat h = homology_map(cm.map, i);
    if (!(h.rows() == h.cols()) || !rref_kernel_image(h).kernel_basis.cols().is_zero())
      rep.comparison_quasi_iso = false;
  }
  return rep;
}

}  // namespace homalg
