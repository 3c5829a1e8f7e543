#include "algspray/builtin.hpp"

namespace algspray {

namespace {

const char* kFlatR2 = R"scn(# tangent bundle of the plane: identity anchor, no structure functions,
# zero spray; the rotation section is an exact symmetry
[algebroid]
n = 2
m = 2
rho[1][1] = "1"
rho[2][2] = "1"

[section eta_rot]
comp[1] = "-x2"
comp[2] = "x1"

[section eta_e1]
comp[1] = "1"

[check]
lie_symmetry = "eta_rot"
collineation = "eta_rot"
)scn";

const char* kSo3 = R"scn(# so(3) as a Lie algebra over a point: zero-dimensional base, zero anchor
[algebroid]
n = 0
m = 3
L[3][1,2] = "1"
L[1][2,3] = "1"
L[2][1,3] = "-1"

[section eta_e1]
comp[1] = "1"

[check]
lie_symmetry = "eta_e1"
collineation = "eta_e1"
)scn";

const char* kSo3Spray = R"scn(# so(3) with a rotation-equivariant quadratic spray; e1 generates a
# rotation in the (y2, y3) plane and is an exact Lie symmetry
[algebroid]
n = 0
m = 3
L[3][1,2] = "1"
L[1][2,3] = "1"
L[2][1,3] = "-1"

[spray]
S[1] = "y2^2 + y3^2"
S[2] = "y1*y2"
S[3] = "y1*y3"

[section eta_e1]
comp[1] = "1"

[check]
lie_symmetry = "eta_e1"
collineation = "eta_e1"
)scn";

const char* kAnchor12 = R"scn(# rank-2 bundle over a line with the non-surjective anchor (1, x1) and
# bracket [e1, e2] = e1, mirroring [d/dx, x d/dx] = d/dx downstairs
[algebroid]
n = 1
m = 2
rho[1][1] = "1"
rho[1][2] = "x1"
L[1][1,2] = "1"

[section eta_e1]
comp[1] = "1"

[check]
lie_symmetry = "eta_e1"
collineation = "eta_e1"
)scn";

const char* kRotSym = R"scn(# flat plane with the quadratic spray of a rotationally symmetric metric;
# the rotation section is an exact Killing symmetry and the spray is curved
[algebroid]
n = 2
m = 2
rho[1][1] = "1"
rho[2][2] = "1"

[spray]
S[1] = "(x1*(y1^2 + y2^2) - 2*(x1*y1 + x2*y2)*y1)/(1 + x1^2 + x2^2)"
S[2] = "(x2*(y1^2 + y2^2) - 2*(x1*y1 + x2*y2)*y2)/(1 + x1^2 + x2^2)"

[section eta_rot]
comp[1] = "-x2"
comp[2] = "x1"

[check]
lie_symmetry = "eta_rot"
collineation = "eta_rot"
)scn";

const BuiltinScenario kAll[] = {
    {"flat_r2", kFlatR2},   {"so3", kSo3},       {"so3_spray", kSo3Spray},
    {"anchor12", kAnchor12}, {"rotsym", kRotSym},
};

}  // namespace

std::span<const BuiltinScenario> builtin_scenarios() { return kAll; }

Scenario builtin_scenario(std::string_view name) {
  for (const auto& b : kAll) {
    if (name == b.name) return load_scenario_text(b.text);
  }
  throw ScenarioError("unknown builtin scenario '" + std::string(name) + "'");
}

}  // namespace algspray
