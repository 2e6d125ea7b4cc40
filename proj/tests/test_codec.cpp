#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "homalg/codec.hpp"
#include "homalg/derived.hpp"

using namespace homalg;

namespace {

std::string error_code(const std::string& text) {
  try {
    (void)decode(text);
  } catch (const Error& e) {
    return e.code();
  }
  return "";
}

std::string reencode(const Document& doc) { return encode(decode(encode(doc))); }

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ChainComplex rational_complex() {
  FieldSpec Q = FieldSpec::rationals();
  std::map<int, Dims> dims{{0, Dims::uniform(Q, 2)}, {1, Dims::uniform(Q, 2)}};
  Mat d1(Q, 2, 2);
  d1.set(0, 0, 0, mpq_class(1, 2));
  d1.set(0, 0, 1, mpq_class(-3));
  d1.set(0, 1, 1, mpq_class(2, 5));
  return make_complex(Q, 0, 1, dims, {{1, d1}});
}

}  // namespace

TEST_CASE("field documents round-trip over prime, rational, and product fields") {
  for (FieldSpec F : {FieldSpec::fp(2), FieldSpec::rationals(), FieldSpec({2, 3})}) {
    Document doc = document_of(F);
    Document back = decode(encode(doc));
    CHECK(back.kind == "field");
    CHECK(std::get<FieldSpec>(back.payload) == F);
    CHECK(reencode(doc) == encode(doc));
  }
}

TEST_CASE("complex documents round-trip, including rational entries") {
  FieldSpec F({2, 3});
  ChainComplex S = sphere(F, Dims::uniform(F, 2), 3);
  ChainComplex D = disk(F, Dims::uniform(F, 1), 2);
  for (const ChainComplex& X : {S, D, tensor(S, D), rational_complex(), zero_complex(F)}) {
    Document doc = document_of(X);
    Document back = decode(encode(doc));
    CHECK(back.kind == "complex");
    CHECK(std::get<ChainComplex>(back.payload) == X);
    CHECK(reencode(doc) == encode(doc));
  }
}

TEST_CASE("map documents round-trip and revalidate") {
  FieldSpec F = FieldSpec::fp(5);
  ChainMap f = disk_to_sphere(F, Dims::uniform(F, 2), 2);
  Document back = decode(encode(document_of(f)));
  CHECK(std::get<ChainMap>(back.payload) == f);
}

TEST_CASE("simplicial documents round-trip") {
  FieldSpec F = FieldSpec::fp(3);
  SimplicialModule A = gamma(sphere(F, Dims::uniform(F, 2), 2), 4);
  Document back = decode(encode(document_of(A)));
  const SimplicialModule& B = std::get<SimplicialModule>(back.payload);
  CHECK(B.normal == A.normal);
  CHECK(B.level_bound == A.level_bound);
}

TEST_CASE("coalgebra fixtures match their committed golden documents") {
  for (const char* name : {"unit", "C2", "C2x4", "product-demo"}) {
    DGCoalgebra C = coalgebra_fixture(name);
    std::string text = encode(document_of(C));
    CHECK(text == read_file(std::string(FIXTURES_DIR) + "/" + name + ".json"));
    Document back = decode(text);
    const DGCoalgebra& B = std::get<DGCoalgebra>(back.payload);
    CHECK(B.carrier == C.carrier);
    CHECK(B.delta == C.delta);
    CHECK(B.epsilon == C.epsilon);
  }
}

TEST_CASE("comodule documents round-trip and revalidate the axioms") {
  DGCoalgebra C = coalgebra_fixture("C2");
  DGComodule X = cofree_comodule(C, sphere(C.carrier.F, Dims::uniform(C.carrier.F, 2), 1));
  Document back = decode(encode(document_of(X)));
  const DGComodule& B = std::get<DGComodule>(back.payload);
  CHECK(B.carrier == X.carrier);
  CHECK(B.rho == X.rho);
  CHECK(validate_comodule(B).ok());
}

TEST_CASE("tower documents round-trip byte-exactly") {
  DGCoalgebra C = coalgebra_fixture("C2");
  PostnikovTower t = build_tower(coalgebra_as_comodule(C), 2);
  Document doc = document_of(t);
  CHECK(reencode(doc) == encode(doc));
  Document back = decode(encode(doc));
  const PostnikovTower& B = std::get<PostnikovTower>(back.payload);
  CHECK(B.n_max() == t.n_max());
  CHECK(verify_tower(B, coalgebra_as_comodule(C)).ok());
}

TEST_CASE("table documents round-trip byte-exactly") {
  DGCoalgebra C = coalgebra_fixture("C2");
  DGComodule k = trivial_comodule(C, unit_complex(C.carrier.F));
  CotorTable t = cotor_table(k, k, 3, "cobar");
  Document doc = document_of(t);
  Document back = decode(encode(doc));
  const CotorTable& B = std::get<CotorTable>(back.payload);
  CHECK(B.max_degree == t.max_degree);
  CHECK(B.method == t.method);
  CHECK(B.dims == t.dims);
  CHECK(reencode(doc) == encode(doc));
}

TEST_CASE("malformed text and structure raise ParseError") {
  CHECK(error_code("{") == "ParseError");
  CHECK(error_code("[1,2]") == "ParseError");
  CHECK(error_code(R"({"kind":"widget","version":1,"payload":{}})") == "ParseError");
  CHECK(error_code(R"({"kind":"field","version":1,"payload":{}})") == "ParseError");
}

TEST_CASE("a version mismatch raises UnknownVersion") {
  CHECK(error_code(R"({"kind":"field","version":99,"payload":{"factors":[2]}})") ==
        "UnknownVersion");
}

TEST_CASE("a complex whose differential does not square to zero is rejected") {
  const char* text = R"({
    "kind": "complex", "version": 1,
    "payload": {
      "field": {"factors": [2]},
      "support": [0, 2],
      "dims": {"0": [1], "1": [1], "2": [1]},
      "d": {"1": [{"shape": [1,1], "rows": [[1]]}],
            "2": [{"shape": [1,1], "rows": [[1]]}]}
    }
  })";
  CHECK(error_code(text) == "ValidationError");
}

TEST_CASE("out-of-range residues and non-canonical rationals are rejected") {
  auto field_complex = [](const char* factors, const char* entry) {
    return std::string(R"({"kind":"complex","version":1,"payload":{"field":{"factors":[)") +
           factors + R"(]},"support":[0,1],"dims":{"0":[1],"1":[1]},)" +
           R"("d":{"1":[{"shape":[1,1],"rows":[[)" + entry + R"(]]}]}}})";
  };
  CHECK(error_code(field_complex("2", "2")) == "ValidationError");
  CHECK(error_code(field_complex("2", "-1")) == "ValidationError");
  CHECK(error_code(field_complex("0", "\"2/4\"")) == "ValidationError");
  CHECK(error_code(field_complex("0", "\"1/-2\"")) == "ValidationError");
  CHECK(error_code(field_complex("0", "\"x/2\"")) == "ParseError");
  CHECK(error_code(field_complex("0", "7")) == "ParseError");
}

TEST_CASE("a tampered coalgebra document fails validation") {
  DGCoalgebra C = coalgebra_fixture("C2");
  std::string good = encode(document_of(C));
  // drop the comultiplication levels so the counit axiom fails
  std::string bad = good;
  auto pos = bad.find("\"delta\"");
  REQUIRE(pos != std::string::npos);
  auto lv = bad.find("\"levels\"", pos);
  auto open = bad.find('{', lv + 8);
  int depth = 1;
  size_t close = open + 1;
  while (depth > 0) {
    if (bad[close] == '{') ++depth;
    if (bad[close] == '}') --depth;
    ++close;
  }
  bad.replace(open, close - open, "{}");
  CHECK(error_code(bad) == "ValidationError");
}
