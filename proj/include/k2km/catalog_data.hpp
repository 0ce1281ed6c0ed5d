#pragma once

namespace k2km {

/// Built-in catalog, identical to data/catalog.txt (a unit test pins the
/// two together). Ids follow the standard numbering of hyperbolic Dynkin
/// diagrams; the two class3 entries are the symmetric all-even matrices.
inline const char* builtin_catalog_text() {
    return R"(# Hyperbolic GCM ground truth: published K2(A,F) values.
# Records are blank-line separated. Fields per record:
#   id      opaque entry name
#   source  table-rank3 | class3 | table-rank4 | table-rank5 | table-rank6
#   matrix  rows separated by ';', entries by whitespace
#   k2      expected factors, ' x '-separated display names (or 1)

id 27
source table-rank3
matrix 2 -1 0; -3 2 -2; 0 -1 2
k2 K2(2,F)

id 40
source table-rank3
matrix 2 -1 -2; -1 2 -2; -2 -2 2
k2 K2(F) x K2(2,F)/<{u^2,v}>

id 55
source table-rank3
matrix 2 -1 -2; -2 2 -2; -2 -1 2
k2 K2(2,F) x K2(2,F)/<{u^2,v}>

id 59
source table-rank3
matrix 2 -1 -2; -2 2 -2; -2 -2 2
k2 K2(2,F)/<{u^2,v}> x K2(2,F)/<{u^2,v}>

id 63
source table-rank3
matrix 2 -2 -3; -1 2 -2; -1 -2 2
k2 K2(2,F)/<{u^2,v}>

id 67
source table-rank3
matrix 2 -2 -4; -1 2 -2; -1 -2 2
k2 K2(2,F)/<{u^2,v}> x K2(2,F)/<{u^2,v}>

id 81
source table-rank3
matrix 2 -2 -3; -2 2 -2; -1 -2 2
k2 K2(F)/4K2(F) x K2(2,F)/<{u^2,v}>

id 82
source table-rank3
matrix 2 -2 -4; -2 2 -2; -1 -2 2
k2 K2(2,F)/3<{u^2,v}> x K2(2,F)/<{u^2,v}>

id 88
source table-rank3
matrix 2 -2 -1; -2 2 -1; -4 -3 2
k2 K2(2,F)/<{u^2,v}>

id 90
source table-rank3
matrix 2 -1 -2; -4 2 -4; -2 -1 2
k2 K2(2,F) x K2(2,F)/<{u^2,v}>

id 103
source table-rank3
matrix 2 -2 0; -2 2 -1; 0 -1 2
k2 K2(F) x K2(2,F)/<{u^2,v}>

id 106
source table-rank3
matrix 2 -2 0; -2 2 -2; 0 -1 2
k2 K2(2,F) x K2(2,F)/<{u^2,v}>

id 110
source table-rank3
matrix 2 -1 0; -4 2 -2; 0 -1 2
k2 K2(2,F) x K2(2,F)/<{u^2,v}>

id 113
source table-rank3
matrix 2 -2 0; -2 2 -1; 0 -3 2
k2 K2(F) x K2(2,F)/<{u^2,v}>

id 114
source table-rank3
matrix 2 -2 0; -2 2 -3; 0 -1 2
k2 K2(F) x K2(2,F)/<{u^2,v}>

id 116
source table-rank3
matrix 2 -1 0; -4 2 -2; 0 -2 2
k2 K2(2,F) x K2(2,F)/<{u^2,v}>

id 119
source table-rank3
matrix 2 -1 0; -3 2 -4; 0 -1 2
k2 K2(2,F)

id 122
source table-rank3
matrix 2 -1 0; -4 2 -4; 0 -1 2
k2 K2(2,F) x K2(2,F)/2<{u^2,v}>

id class3-complete
source class3
matrix 2 -2 -2; -2 2 -2; -2 -2 2
k2 K2(2,F) x K2(2,F)/<{u^2,v}> x K2(2,F)/<{u^2,v}>

id class3-path
source class3
matrix 2 -2 0; -2 2 -2; 0 -2 2
k2 K2(2,F) x K2(2,F)/<{u^2,v}> x K2(2,F)/<{u^2,v}>

id 128
source table-rank4
matrix 2 -1 -1 0; -1 2 -1 0; -1 -1 2 -2; 0 0 -1 2
k2 K2(2,F)

id 135
source table-rank4
matrix 2 -1 0 -1; -1 2 -2 0; 0 -1 2 -1; -1 0 -2 2
k2 K2(2,F)

id 143
source table-rank4
matrix 2 -1 0 -2; -1 2 -1 0; 0 -2 2 -2; -1 0 -1 2
k2 K2(2,F)/<{u^2,v}>

id 144
source table-rank4
matrix 2 -1 0 -2; -1 2 -2 0; 0 -1 2 -2; -1 0 -1 2
k2 K2(2,F)/<{u^2,v}>

id 146
source table-rank4
matrix 2 -1 0 -2; -2 2 -2 0; 0 -1 2 -2; -1 0 -1 2
k2 K2(2,F)

id 147
source table-rank4
matrix 2 -1 0 -2; -2 2 -1 0; 0 -2 2 -2; -1 0 -1 2
k2 K2(2,F)/3<{u^2,v}>

id 148
source table-rank4
matrix 2 -2 0 -2; -1 2 -1 0; 0 -2 2 -2; -1 0 -1 2
k2 K2(2,F) x K2(2,F)/<{u^2,v}>

id 156
source table-rank4
matrix 2 0 0 -1; 0 2 0 -1; 0 0 2 -1; -2 -2 -2 2
k2 K2(2,F) x K2(2,F)/<{u^2,v}> x K2(2,F)/<{u^2,v}>

id 162
source table-rank4
matrix 2 -1 0 0; -1 2 -1 0; 0 -2 2 -2; 0 0 -1 2
k2 K2(F) x K2(2,F)/<{u^2,v}>

id 168
source table-rank4
matrix 2 -1 0 0; -2 2 -1 0; 0 -1 2 -3; 0 0 -1 2
k2 K2(2,F)

id 174
source table-rank4
matrix 2 -1 0 0; -2 2 -2 0; 0 -1 2 -2; 0 0 -1 2
k2 K2(2,F) x K2(2,F)/<{u^2,v}>

id 179
source table-rank5
matrix 2 -1 -1 0 0; -1 2 0 -1 0; -1 0 2 -1 0; 0 -1 -1 2 -2; 0 0 0 -1 2
k2 K2(2,F)

id 197
source table-rank5
matrix 2 -1 0 0 0; -1 2 -1 0 0; 0 -2 2 -1 0; 0 0 -1 2 -2; 0 0 0 -1 2
k2 K2(F) x K2(2,F)/<{u^2,v}>

id 215
source table-rank6
matrix 2 -1 0 0 0 0; -1 2 -1 0 0 0; 0 -2 2 -1 0 0; 0 0 -1 2 -1 0; 0 0 0 -1 2 -2; 0 0 0 0 -1 2
k2 K2(F) x K2(2,F)/<{u^2,v}>
)";
}

}  // namespace k2km
