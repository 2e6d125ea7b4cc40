#include "homalg/simplicial.hpp"

#include <algorithm>
#include <functional>

namespace homalg {

namespace {

Dims entrywise_product(const Dims& a, const Dims& b) {
  Dims p;
  for (size_t f = 0; f < a.v.size(); ++f) p.v.push_back(a.v[f] * b.v[f]);
  return p;
}

void tags_rec(std::vector<Tag>& out, Tag& cur, int n) {
  if (static_cast<int>(cur.size()) == n + 1) {
    out.push_back(cur);
    return;
  }
  cur.push_back(cur.back());  // step 0 first keeps lexicographic order
  tags_rec(out, cur, n);
  cur.back() += 1;
  tags_rec(out, cur, n);
  cur.pop_back();
}

// offsets of every tag block at a level, and the level dimension
struct Layout {
  std::vector<TagBlock> blocks;
  Dims dim;
  std::map<Tag, int> index;
};

Layout layout_of(const ChainComplex& X, int n) {
  Layout L;
  L.dim = Dims::zero(X.F);
  int bi = 0;
  for (const Tag& t : surjection_tags(n)) {
    TagBlock b;
    b.tag = t;
    b.k = t.back();
    b.offset = L.dim;
    L.dim = L.dim + X.dim(b.k);
    L.index[t] = bi++;
    L.blocks.push_back(std::move(b));
  }
  return L;
}

}  // namespace

std::vector<Tag> surjection_tags(int n) {
  std::vector<Tag> out;
  Tag cur{0};
  tags_rec(out, cur, n);
  return out;
}

SimplicialModule gamma(const ChainComplex& X, int level_bound) {
  for (int n = X.lo; n < 0; ++n)
    if (!X.dim(n).is_zero()) throw Error("NegativeSupport", "normal form must be non-negative");
  SimplicialModule A;
  A.normal = X;
  A.level_bound = level_bound;
  return A;
}

ChainComplex normalize(const SimplicialModule& A) { return A.normal; }

Dims level_dim(const SimplicialModule& A, int n) { return layout_of(A.normal, n).dim; }

LevelData structure_maps(const SimplicialModule& A, int n) {
  if (n < 0 || n > A.level_bound)
    throw Error("LevelBoundExceeded", "level " + std::to_string(n) + " not materializable");
  const ChainComplex& X = A.normal;
  const FieldSpec& F = X.F;
  Layout here = layout_of(X, n);
  LevelData L;
  L.n = n;
  L.dim = here.dim;
  L.blocks = here.blocks;

  if (n > 0) {
    Layout below = layout_of(X, n - 1);
    for (int i = 0; i <= n; ++i) {
      Mat di(F, below.dim, here.dim);
      for (const TagBlock& b : here.blocks) {
        if (X.dim(b.k).is_zero()) continue;
        Tag c;  // the tag's values with position i deleted
        for (int t = 0; t <= n; ++t)
          if (t != i) c.push_back(b.tag[t]);
        // at most one value of [k] can go missing
        int missing = -1;
        for (int t = 0; t + 1 < static_cast<int>(c.size()); ++t)
          if (c[t + 1] - c[t] == 2) missing = c[t] + 1;
        if (c[0] == 1) missing = 0;
        if (c.back() == b.k - 1) missing = b.k;
        if (missing == -1) {
          add_block(di, below.blocks[below.index.at(c)].offset, b.offset,
                    Mat::identity(F, X.dim(b.k)));
        } else if (missing == 0) {
          Tag shifted;
          for (int v : c) shifted.push_back(v - 1);
          add_block(di, below.blocks[below.index.at(shifted)].offset, b.offset, X.diff(b.k));
        }
      }
      L.d.push_back(std::move(di));
    }
  }

  if (n + 1 <= A.level_bound) {
    Layout above = layout_of(X, n + 1);
    for (int i = 0; i <= n; ++i) {
      Mat si(F, above.dim, here.dim);
      for (const TagBlock& b : here.blocks) {
        if (X.dim(b.k).is_zero()) continue;
        Tag dup;  // position i duplicated
        for (int t = 0; t <= n; ++t) {
          dup.push_back(b.tag[t]);
          if (t == i) dup.push_back(b.tag[t]);
        }
        add_block(si, above.blocks[above.index.at(dup)].offset, b.offset,
                  Mat::identity(F, X.dim(b.k)));
      }
      L.s.push_back(std::move(si));
    }
  }
  return L;
}

Mat normal_inclusion(const SimplicialModule& A, int p) {
  const ChainComplex& X = A.normal;
  Layout L = layout_of(X, p);
  Mat m(X.F, L.dim, X.dim(p));
  Tag id;
  for (int t = 0; t <= p; ++t) id.push_back(t);
  add_block(m, L.blocks[L.index.at(id)].offset, Dims::zero(X.F), Mat::identity(X.F, X.dim(p)));
  return m;
}

Mat normal_projection(const SimplicialModule& A, int p) {
  return normal_inclusion(A, p).transpose();
}

Mat epi_action(const SimplicialModule& A, const Tag& rho) {
  const FieldSpec& F = A.normal.F;
  int n = static_cast<int>(rho.size()) - 1;
  int j = rho.back();
  if (n == j) return Mat::identity(F, level_dim(A, n));
  int i = 0;
  while (rho[i] != rho[i + 1]) ++i;
  Tag shorter;
  for (int t = 0; t <= n; ++t)
    if (t != i + 1) shorter.push_back(rho[t]);
  return structure_maps(A, n - 1).s.at(i).mul(epi_action(A, shorter));
}

HomologyData homotopy_group(const SimplicialModule& A, int n) { return homology(A.normal, n); }

LevelTensor levelwise_tensor(const SimplicialModule& A, const SimplicialModule& B) {
  if (A.normal.F != B.normal.F) throw Error("FieldMismatch", "levelwise tensor");
  const FieldSpec& F = A.normal.F;
  int bound = std::min(A.level_bound, B.level_bound);
  LevelTensor out;
  out.product.level_bound = bound;

  int hi = std::min(bound, std::max(0, A.normal.hi + B.normal.hi));
  std::map<int, Dims> dims;
  std::map<int, Mat> diff;
  std::vector<LevelData> la, lb;
  for (int m = 0; m <= hi; ++m) {
    la.push_back(structure_maps(A, m));
    lb.push_back(structure_maps(B, m));
  }
  for (int m = 0; m <= hi; ++m) {
    // normalized basis: jointly injective tag pairs
    Dims nm = Dims::zero(F);
    std::vector<std::pair<const TagBlock*, const TagBlock*>> pairs;
    for (const TagBlock& a : la[m].blocks)
      for (const TagBlock& b : lb[m].blocks) {
        bool degenerate = false;
        for (int t = 0; t < m; ++t)
          if (a.tag[t] == a.tag[t + 1] && b.tag[t] == b.tag[t + 1]) degenerate = true;
        if (degenerate) continue;
        pairs.push_back({&a, &b});
        nm = nm + entrywise_product(A.normal.dim(a.k), B.normal.dim(b.k));
      }
    Mat inc(F, entrywise_product(la[m].dim, lb[m].dim), nm);
    Dims col = Dims::zero(F);
    for (auto& [a, b] : pairs) {
      Dims wa = A.normal.dim(a->k), wb = B.normal.dim(b->k);
      for (int f = 0; f < F.nf(); ++f)
        for (int v = 0; v < wa.at(f); ++v)
          for (int w = 0; w < wb.at(f); ++w) {
            int row = (a->offset.at(f) + v) * lb[m].dim.at(f) + b->offset.at(f) + w;
            int c = col.at(f) + v * wb.at(f) + w;
            inc.set(f, row, c, Comp(1LL));
          }
      col = col + entrywise_product(wa, wb);
    }
    dims[m] = nm;
    out.incl.emplace(m, inc);
    out.proj.emplace(m, inc.transpose());
    // face-natural section: the unique basis of ∩_{i≥1} ker(d_i⊗d_i) whose
    // non-degenerate coordinates are the identity
    if (m == 0) {
      out.sect.emplace(0, out.incl.at(0));
    } else {
      Mat stacked = la[m].d.at(1).kron(lb[m].d.at(1));
      for (int i = 2; i <= m; ++i) stacked = stacked.vstack(la[m].d.at(i).kron(lb[m].d.at(i)));
      Mat ker = rref_kernel_image(stacked).kernel_basis;
      auto change = solve(out.proj.at(m).mul(ker), Mat::identity(F, nm));
      if (!change) throw Error("Internal", "normalized section is not a complement");
      out.sect.emplace(m, ker.mul(*change));
    }
  }
  for (int m = 1; m <= hi; ++m) {
    Mat moore(F, entrywise_product(la[m - 1].dim, lb[m - 1].dim),
              entrywise_product(la[m].dim, lb[m].dim));
    for (int i = 0; i <= m; ++i) {
      Mat term = la[m].d.at(i).kron(lb[m].d.at(i));
      moore = (i % 2 == 0) ? moore.add(term) : moore.sub(term);
    }
    diff.emplace(m, out.proj.at(m - 1).mul(moore).mul(out.incl.at(m)));
  }
  out.product.normal = make_complex(F, 0, hi, std::move(dims), std::move(diff));
  return out;
}

Mat tensor_level_iso(const SimplicialModule& A, const SimplicialModule& B,
                     const LevelTensor& T, int n) {
  const FieldSpec& F = A.normal.F;
  Layout gl = layout_of(T.product.normal, n);
  Dims lvl = entrywise_product(level_dim(A, n), level_dim(B, n));
  Mat iso(F, lvl, gl.dim);

  // realize an epi tag on the diagonal degeneracies of the level tensor;
  // the diagonal degeneracy matrices are cached per (level, index)
  std::map<std::pair<int, int>, Mat> skron;
  auto diag_s = [&](int m, int i) -> const Mat& {
    auto it = skron.find({m, i});
    if (it == skron.end())
      it = skron.emplace(std::make_pair(m, i),
                         structure_maps(A, m).s.at(i).kron(structure_maps(B, m).s.at(i)))
               .first;
    return it->second;
  };
  std::function<Mat(const Tag&)> realize = [&](const Tag& rho) -> Mat {
    int m = static_cast<int>(rho.size()) - 1;
    int j = rho.back();
    if (m == j) return T.sect.at(j);
    int i = 0;
    while (rho[i] != rho[i + 1]) ++i;
    Tag shorter;
    for (int t = 0; t <= m; ++t)
      if (t != i + 1) shorter.push_back(rho[t]);
    return diag_s(m - 1, i).mul(realize(shorter));
  };

  for (const TagBlock& b : gl.blocks) {
    if (T.product.normal.dim(b.k).is_zero()) continue;
    add_block(iso, Dims::zero(F), b.offset, realize(b.tag));
  }
  return iso;
}

Mat ez_level(const SimplicialModule& A, const SimplicialModule& B, int n) {
  const FieldSpec& F = A.normal.F;
  const ChainComplex &X = A.normal, &Y = B.normal;
  std::vector<LevelData> la, lb;
  for (int m = 0; m <= n; ++m) {
    la.push_back(structure_maps(A, m));
    lb.push_back(structure_maps(B, m));
  }
  Dims cols = Dims::zero(F);
  std::vector<Dims> coff;
  for (int p = 0; p <= n; ++p) {
    coff.push_back(cols);
    cols = cols + entrywise_product(X.dim(p), Y.dim(n - p));
  }
  Mat M(F, entrywise_product(la[n].dim, lb[n].dim), cols);

  for (int p = 0; p <= n; ++p) {
    int q = n - p;
    if (X.dim(p).is_zero() || Y.dim(q).is_zero()) continue;
    // enumerate subsets mu ⊂ {0..n-1} of size p (degeneracies applied to B)
    std::vector<int> mu;
    std::function<void(int)> rec = [&](int start) {
      if (static_cast<int>(mu.size()) == p) {
        std::vector<int> nu;
        for (int t = 0; t < n; ++t)
          if (std::find(mu.begin(), mu.end(), t) == mu.end()) nu.push_back(t);
        int inv = 0;
        for (int a : mu)
          for (int b : nu)
            if (b < a) ++inv;
        Mat MA = normal_inclusion(A, p);
        for (size_t t = 0; t < nu.size(); ++t) MA = la[p + t].s.at(nu[t]).mul(MA);
        Mat MB = normal_inclusion(B, q);
        for (size_t t = 0; t < mu.size(); ++t) MB = lb[q + t].s.at(mu[t]).mul(MB);
        Mat term = MA.kron(MB);
        if (inv % 2 != 0) term = term.neg();
        add_block(M, Dims::zero(F), coff[p], term);
        return;
      }
      for (int t = start; t < n; ++t) {
        mu.push_back(t);
        rec(t + 1);
        mu.pop_back();
      }
    };
    rec(0);
  }
  return M;
}

Mat aw_level(const SimplicialModule& A, const SimplicialModule& B, int n) {
  const FieldSpec& F = A.normal.F;
  const ChainComplex &X = A.normal, &Y = B.normal;
  std::vector<LevelData> la, lb;
  for (int m = 0; m <= n; ++m) {
    la.push_back(structure_maps(A, m));
    lb.push_back(structure_maps(B, m));
  }
  Dims rows = Dims::zero(F);
  std::vector<Dims> roff;
  for (int p = 0; p <= n; ++p) {
    roff.push_back(rows);
    rows = rows + entrywise_product(X.dim(p), Y.dim(n - p));
  }
  Mat M(F, rows, entrywise_product(la[n].dim, lb[n].dim));
  for (int p = 0; p <= n; ++p) {
    int q = n - p;
    if (X.dim(p).is_zero() || Y.dim(q).is_zero()) continue;
    Mat front = Mat::identity(F, la[n].dim);  // d_{p+1} ∘ … ∘ d_n
    for (int m = n; m > p; --m) front = la[m].d.at(m).mul(front);
    Mat back = Mat::identity(F, lb[n].dim);  // d_0 applied p times
    for (int m = n; m > q; --m) back = lb[m].d.at(0).mul(back);
    Mat blockmap = normal_projection(A, p).mul(front).kron(normal_projection(B, q).mul(back));
    add_block(M, roff[p], Dims::zero(F), blockmap);
  }
  return M;
}

ChainMap eilenberg_zilber(const SimplicialModule& A, const SimplicialModule& B,
                          const LevelTensor& T) {
  ChainMap f;
  f.src = tensor(A.normal, B.normal);
  f.dst = T.product.normal;
  for (int n = 0; n <= T.product.normal.hi; ++n)
    f.levels.emplace(n, T.proj.at(n).mul(ez_level(A, B, n)));
  return f;
}

ChainMap alexander_whitney(const SimplicialModule& A, const SimplicialModule& B,
                           const LevelTensor& T) {
  ChainMap f;
  f.src = T.product.normal;
  f.dst = tensor(A.normal, B.normal);
  for (int n = 0; n <= T.product.normal.hi; ++n)
    f.levels.emplace(n, aw_level(A, B, n).mul(T.incl.at(n)));
  return f;
}

NormalizedPresentation normalize_levelwise(const LevelwiseObject& E) {
  const FieldSpec& F = E.F;
  NormalizedPresentation P;
  P.basis.resize(E.bound + 1);
  std::map<int, Dims> dims;
  std::map<int, Mat> diffs;
  for (int p = 0; p <= E.bound; ++p) {
    if (p == 0) {
      P.basis[0] = Mat::identity(F, E.dim[0]);
    } else {
      Mat stacked = E.d[p][1];
      for (int i = 2; i <= p; ++i) stacked = stacked.vstack(E.d[p][i]);
      P.basis[p] = rref_kernel_image(stacked).kernel_basis;
    }
    dims[p] = P.basis[p].cols();
  }
  for (int p = 1; p <= E.bound; ++p) {
    auto dp = solve(P.basis[p - 1], E.d[p][0].mul(P.basis[p]));
    if (!dp) throw Error("BadLevelwise", "normalized boundary does not stay normalized");
    diffs.emplace(p, std::move(*dp));
  }
  P.module = gamma(make_complex(F, 0, E.bound, dims, diffs), E.bound);
  // the Dold-Kan level identification: each tag block is the degeneracy
  // composite realizing the tag, applied to the chosen normalized basis
  std::function<Mat(const Tag&)> realize = [&](const Tag& c) -> Mat {
    int n = static_cast<int>(c.size()) - 1, k = c.back();
    if (n == k) return P.basis[k];
    for (int t = 0; t < n; ++t)
      if (c[t] == c[t + 1]) {
        Tag shorter(c);
        shorter.erase(shorter.begin() + t + 1);
        return E.s[n - 1][t].mul(realize(shorter));
      }
    throw Error("Internal", "non-identity tag without a repeat");
  };
  P.to_level.resize(E.bound + 1);
  P.from_level.resize(E.bound + 1);
  for (int n = 0; n <= E.bound; ++n) {
    Dims ld = level_dim(P.module, n);
    if (ld != E.dim[n])
      throw Error("BadLevelwise", "level " + std::to_string(n) +
                                      " is not the sum of its degenerate pieces");
    Mat M(F, E.dim[n], ld);
    Dims off = Dims::zero(F);
    for (const Tag& t : surjection_tags(n)) {
      Mat blk = realize(t);
      add_block(M, Dims::zero(F), off, blk);
      off = off + blk.cols();
    }
    auto inv = solve(M, Mat::identity(F, E.dim[n]));
    if (!inv || !(inv->mul(M) == Mat::identity(F, ld)))
      throw Error("BadLevelwise", "degenerate pieces do not span level " + std::to_string(n));
    P.to_level[n] = std::move(M);
    P.from_level[n] = std::move(*inv);
  }
  return P;
}

ChainMap normalize_map(const SimplicialModule& A, const SimplicialModule& B,
                       const std::map<int, Mat>& levels) {
  ChainMap f;
  f.src = A.normal;
  f.dst = B.normal;
  int hi = std::min({A.level_bound, B.level_bound, std::max(A.normal.hi, B.normal.hi)});
  for (int p = 0; p <= hi; ++p) {
    auto it = levels.find(p);
    if (it == levels.end()) continue;
    f.levels.emplace(p, normal_projection(B, p).mul(it->second).mul(normal_inclusion(A, p)));
  }
  validate_chain_map(f);
  return f;
}

SimplicialModule eilenberg_maclane(const FieldSpec& F, const Dims& V, int n, int level_bound) {
  if (n < 0) throw Error("BadDegree", "Eilenberg-Mac Lane degree must be non-negative");
  return gamma(sphere(F, V, n), level_bound);
}

PathObject path_object(const FieldSpec& F, const Dims& V, int n, int level_bound) {
  if (n < 1) throw Error("BadDegree", "path object needs degree at least 1");
  PathObject P;
  P.total = gamma(disk(F, V, n), level_bound);
  P.projection = disk_to_sphere(F, V, n);
  return P;
}

}  // namespace homalg
