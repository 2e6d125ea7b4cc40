// Command-line front end: every verb reads and writes the JSON document
// format, "-" means stdin/stdout. Exit 0 on success, 1 when a validation or
// mathematical check fails, 2 on I/O or parse trouble.
#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "homalg/codec.hpp"

using namespace homalg;

namespace {

std::string slurp(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in.good()) throw Error("IOError", "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Document load(const std::string& path) { return decode(slurp(path)); }

template <class T>
T expect(const Document& doc, const std::string& want) {
  const T* p = std::get_if<T>(&doc.payload);
  if (!p) throw Error("ValidationError", "expected a " + want + " document, got " + doc.kind);
  return *p;
}

bool coalgebras_equal(const DGCoalgebra& a, const DGCoalgebra& b) {
  return a.carrier == b.carrier && a.delta == b.delta && a.epsilon == b.epsilon;
}

// A comodule argument is either a comodule document (the embedded coalgebra is
// cross-checked against --coalgebra when given) or a complex document promoted
// to a trivial comodule over the --coalgebra.
DGComodule load_comodule(const std::string& path, const std::string& coalgebra_path) {
  Document doc = load(path);
  if (const DGComodule* x = std::get_if<DGComodule>(&doc.payload)) {
    if (!coalgebra_path.empty()) {
      DGCoalgebra C = expect<DGCoalgebra>(load(coalgebra_path), "coalgebra");
      if (!coalgebras_equal(x->coalgebra, C))
        throw Error("ValidationError", path + " is a comodule over a different coalgebra");
    }
    return *x;
  }
  if (const DGCoalgebra* c = std::get_if<DGCoalgebra>(&doc.payload)) {
    if (!coalgebra_path.empty()) {
      DGCoalgebra C = expect<DGCoalgebra>(load(coalgebra_path), "coalgebra");
      if (!coalgebras_equal(*c, C))
        throw Error("ValidationError", path + " is a different coalgebra");
    }
    return coalgebra_as_comodule(*c);
  }
  if (const ChainComplex* m = std::get_if<ChainComplex>(&doc.payload)) {
    if (coalgebra_path.empty())
      throw Error("ValidationError", path + " is a bare complex; --coalgebra is required");
    return trivial_comodule(expect<DGCoalgebra>(load(coalgebra_path), "coalgebra"), *m);
  }
  throw Error("ValidationError", "expected a comodule or complex document, got " + doc.kind);
}

std::string fmt_dims(const Dims& d) {
  std::string s;
  for (size_t i = 0; i < d.v.size(); ++i) s += (i ? "," : "") + std::to_string(d.v[i]);
  return s;
}

void emit_document(const Document& doc, const std::string& format,
                   const std::string& text_report) {
  if (format == "json")
    std::cout << encode(doc);
  else
    std::cout << text_report;
}

int default_max_degree() {
  if (const char* s = std::getenv("HOMALG_MAX_DEGREE")) {
    try {
      return std::stoi(s);
    } catch (const std::logic_error&) {
      throw Error("ParseError", "HOMALG_MAX_DEGREE is not an integer");
    }
  }
  return 4;
}

// plain JSON (non-document) reports, assembled by hand to stay dependency-light
std::string json_dims_table(const std::string& key,
                            const std::vector<std::pair<int, Dims>>& rows) {
  std::string s = "{\n  \"" + key + "\": {";
  for (size_t i = 0; i < rows.size(); ++i) {
    s += (i ? "," : "");
    s += "\n    \"" + std::to_string(rows[i].first) + "\": [";
    const auto& v = rows[i].second.v;
    for (size_t j = 0; j < v.size(); ++j) s += (j ? "," : "") + std::to_string(v[j]);
    s += "]";
  }
  s += "\n  }\n}\n";
  return s;
}

int run(int argc, char** argv) {
  CLI::App app{"exact homological algebra over products of fields"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "json";
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();

  std::string in1, in2, coalgebra_path, method = "postnikov", fixture, direction;
  int degree = -1, stages = 2, max_degree = -1;

  CLI::App* validate = app.add_subcommand("validate", "parse and validate a document");
  validate->add_option("file", in1)->required();

  CLI::App* homology_cmd = app.add_subcommand("homology", "homology dimension table");
  homology_cmd->add_option("file", in1)->required();
  homology_cmd->add_option("--degree", degree, "single degree");

  CLI::App* tower_cmd = app.add_subcommand("tower", "build and verify a Postnikov tower");
  tower_cmd->add_option("file", in1)->required();
  tower_cmd->add_option("--coalgebra", coalgebra_path)->required();
  tower_cmd->add_option("--stages", stages)->required()->check(CLI::PositiveNumber);

  CLI::App* cotensor_cmd = app.add_subcommand("cotensor", "underived cotensor product");
  cotensor_cmd->add_option("x", in1)->required();
  cotensor_cmd->add_option("y", in2)->required();
  cotensor_cmd->add_option("--coalgebra", coalgebra_path);

  CLI::App* cotor_cmd = app.add_subcommand("cotor", "derived cotensor homology table");
  cotor_cmd->add_option("x", in1)->required();
  cotor_cmd->add_option("y", in2)->required();
  cotor_cmd->add_option("--coalgebra", coalgebra_path);
  cotor_cmd->add_option("--max-degree", max_degree);
  cotor_cmd->add_option("--method", method)
      ->check(CLI::IsMember({"postnikov", "cobar", "both"}));

  CLI::App* doldkan_cmd = app.add_subcommand("doldkan", "apply gamma or normalization");
  doldkan_cmd->add_option("direction", direction)
      ->required()
      ->check(CLI::IsMember({"gamma", "n"}));
  doldkan_cmd->add_option("file", in1)->required();
  doldkan_cmd->add_option("--stages", stages, "level bound for gamma")->default_val(8);

  CLI::App* counit_cmd = app.add_subcommand("counit-check", "counit quasi-iso verdict");
  counit_cmd->add_option("file", in1)->required();
  counit_cmd->add_option("--coalgebra", coalgebra_path);
  counit_cmd->add_option("--max-degree", max_degree);

  CLI::App* demo_cmd = app.add_subcommand("demo", "emit a built-in fixture document");
  demo_cmd->add_option("fixture", fixture)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  if (validate->parsed()) {
    Document doc = load(in1);
    emit_document(doc, format, "valid " + doc.kind + " document\n");
    return 0;
  }

  if (homology_cmd->parsed()) {
    const ChainComplex& X = expect<ChainComplex>(load(in1), "complex");
    std::vector<std::pair<int, Dims>> rows;
    if (degree >= 0 || homology_cmd->count("--degree")) {
      rows.emplace_back(degree, homology(X, degree).dim);
    } else {
      for (int n = X.lo; n <= X.hi; ++n) rows.emplace_back(n, homology(X, n).dim);
    }
    if (format == "json") {
      std::cout << json_dims_table("homology", rows);
    } else {
      for (auto& [n, d] : rows) std::cout << "H_" << n << " = " << fmt_dims(d) << "\n";
    }
    return 0;
  }

  if (tower_cmd->parsed()) {
    DGComodule X = load_comodule(in1, coalgebra_path);
    PostnikovTower t = build_tower(X, stages);
    TowerReport r = verify_tower(t, X);
    if (!r.ok()) {
      for (const auto& f : r.failures) std::cerr << "tower check failed: " << f << "\n";
      return 1;
    }
    std::ostringstream text;
    text << "tower with " << t.n_max() << " stages verified\n";
    for (int n = 0; n <= t.n_max(); ++n)
      text << "stage " << n << ": total dim " << fmt_dims(t.stages[n].carrier.total_dim())
           << "\n";
    emit_document(document_of(t), format, text.str());
    return 0;
  }

  if (cotensor_cmd->parsed()) {
    DGComodule X = load_comodule(in1, coalgebra_path);
    DGComodule Y = load_comodule(in2, coalgebra_path);
    Cotensor ct = cotensor(X, Y);
    std::ostringstream text;
    const ChainComplex& P = ct.comodule.carrier;
    for (int n = P.lo; n <= P.hi; ++n)
      text << "degree " << n << ": " << fmt_dims(P.dim(n)) << "\n";
    emit_document(document_of(ct.comodule), format, text.str());
    return 0;
  }

  if (cotor_cmd->parsed()) {
    DGComodule X = load_comodule(in1, coalgebra_path);
    DGComodule Y = load_comodule(in2, coalgebra_path);
    int D = max_degree >= 0 ? max_degree : default_max_degree();
    CotorTable table;
    if (method == "both") {
      CotorTable a = cotor_table(X, Y, D, "postnikov");
      CotorTable b = cotor_table(X, Y, D, "cobar");
      if (!same_dims(a, b))
        throw Error("ValidationError", "postnikov and cobar Cotor tables disagree");
      table = a;
    } else {
      table = cotor_table(X, Y, D, method);
    }
    std::ostringstream text;
    for (int n = 0; n <= D; ++n)
      text << "Cotor^" << n << " = " << fmt_dims(table.dims[static_cast<size_t>(n)]) << "\n";
    emit_document(document_of(table), format, text.str());
    return 0;
  }

  if (doldkan_cmd->parsed()) {
    Document doc = load(in1);
    if (direction == "gamma") {
      const ChainComplex& X = expect<ChainComplex>(doc, "complex");
      SimplicialModule A = gamma(X, stages);
      std::ostringstream text;
      for (int n = 0; n <= A.level_bound; ++n)
        text << "level " << n << ": " << fmt_dims(level_dim(A, n)) << "\n";
      emit_document(document_of(A), format, text.str());
    } else {
      const SimplicialModule& A = expect<SimplicialModule>(doc, "simplicial");
      ChainComplex X = normalize(A);
      std::ostringstream text;
      for (int n = X.lo; n <= X.hi; ++n)
        text << "degree " << n << ": " << fmt_dims(X.dim(n)) << "\n";
      emit_document(document_of(X), format, text.str());
    }
    return 0;
  }

  if (counit_cmd->parsed()) {
    DGComodule X = load_comodule(in1, coalgebra_path);
    int D = max_degree >= 0 ? max_degree : default_max_degree();
    int bound = D + 2;
    SimplicialComodule sX = gamma_comodule(X, bound);
    SimplicialComoduleMap eps = counit_map(sX, X.coalgebra);
    ChainMap h;
    h.src = eps.src.carrier.normal;
    h.dst = sX.carrier.normal;
    for (int p = 0; p <= bound; ++p)
      h.levels.emplace(p, normal_projection(sX.carrier, p)
                              .mul(eps.levels.at(p))
                              .mul(normal_inclusion(eps.src.carrier, p)));
    bool ok = true;
    std::vector<std::pair<int, Dims>> rows;
    for (int n = 0; n <= D; ++n) {
      HomologyData hs = homology(h.src, n), hd = homology(h.dst, n);
      bool iso = hs.dim == hd.dim &&
                 rref_kernel_image(homology_map(h, n)).kernel_basis.cols().is_zero();
      ok = ok && iso;
      rows.emplace_back(n, hd.dim);
      if (format == "text")
        std::cout << "degree " << n << ": " << (iso ? "iso" : "NOT iso") << " (dim "
                  << fmt_dims(hd.dim) << ")\n";
    }
    if (format == "json") std::cout << json_dims_table("counit_homology", rows);
    if (format == "text") std::cout << (ok ? "quasi-isomorphism\n" : "not a quasi-isomorphism\n");
    return ok ? 0 : 1;
  }

  if (demo_cmd->parsed()) {
    DGCoalgebra C = coalgebra_fixture(fixture);
    std::ostringstream text;
    text << fixture << ": carrier degrees " << C.carrier.lo << ".." << C.carrier.hi
         << ", total dim " << fmt_dims(C.carrier.total_dim()) << "\n";
    emit_document(document_of(C), format, text.str());
    return 0;
  }

  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    const std::string& c = e.code();
    return (c == "ParseError" || c == "UnknownVersion" || c == "IOError") ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
