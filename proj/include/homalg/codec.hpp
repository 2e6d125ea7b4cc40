#pragma once
// Bit-exact JSON serialization of the domain objects. Prime-field entries are
// decimal residues in [0,p); rationals are "a/b" in lowest terms with b > 0;
// a matrix is one row-major block per field factor with its shape recorded;
// complexes are {"field","support","dims","d"}, maps and coactions carry
// {"levels"}. decode validates through the owning module and returns exactly
// what was encoded.

#include <string>
#include <variant>

#include "homalg/derived.hpp"

namespace homalg {

inline constexpr int kCodecVersion = 1;

using Payload = std::variant<FieldSpec, ChainComplex, ChainMap, SimplicialModule,
                             DGCoalgebra, DGComodule, PostnikovTower, CotorTable>;

// kind ∈ {field, complex, map, simplicial, coalgebra, comodule, tower, table},
// always consistent with the engaged payload alternative.
struct Document {
  std::string kind;
  Payload payload;
};

Document document_of(FieldSpec f);
Document document_of(ChainComplex x);
Document document_of(ChainMap f);
Document document_of(SimplicialModule a);
Document document_of(DGCoalgebra c);
Document document_of(DGComodule x);
Document document_of(PostnikovTower t);
Document document_of(CotorTable t);

// Deterministic pretty-printed UTF-8 JSON.
std::string encode(const Document& doc);

// Throws ParseError (with location/context) on malformed text or structure,
// UnknownVersion on a version mismatch, ValidationError when the decoded
// object fails its module's validator.
Document decode(const std::string& text);

}  // namespace homalg
