// Copyright 2026 The binlb Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Python bindings. Rationals cross the boundary as exact "p/q" strings.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "binlb/exactnum.h"
#include "binlb/harmonic.h"
#include "binlb/lp.h"
#include "binlb/model.h"
#include "binlb/packing.h"
#include "binlb/patterns.h"

namespace py = pybind11;

namespace binlb {
namespace {

std::vector<std::string> Pair(const Interval& i) {
  return {ToString(i.lo), ToString(i.hi)};
}

py::dict DualResult(const std::string& instance_path, const std::string& cert_path) {
  const Instance in = LoadInstance(instance_path);
  const DualCertificate cert = LoadCertificate(cert_path, in.NumTypes());
  const BoundResult r = VerifyDualCertificate(in, cert);
  py::list classes;
  for (const ClassResult& c : r.knapsack.classes) {
    py::dict d;
    d["class"] = c.j + 1;
    d["weight"] = ToString(c.weight);
    d["capacity"] = ToString(c.capacity);
    d["verdict"] = VerdictName(c.verdict);
    classes.append(d);
  }
  py::dict out;
  out["status"] = BoundStatusName(r.status);
  out["bound"] = ToString(r.bound);
  out["reason"] = r.reason;
  out["classes"] = classes;
  return out;
}

py::dict SchemeResult(const std::string& instance_path, const std::string& scheme_path) {
  const Instance in = LoadInstance(instance_path);
  const SchemeReport r = VerifyOptScheme(in, LoadScheme(scheme_path, in.NumTypes()));
  py::dict out;
  out["status"] = BoundStatusName(r.status);
  out["reason"] = r.reason;
  out["prefix_ok"] = r.prefix_ok;
  return out;
}

py::dict PrimalResult(const std::string& instance_path, const std::string& primal_path) {
  const Instance in = LoadInstance(instance_path);
  const PrimalReport r = VerifyPrimal(in, LoadPrimal(primal_path, in.NumTypes()));
  py::dict out;
  out["status"] = BoundStatusName(r.status);
  out["reason"] = r.reason;
  out["all_tight"] = r.coverage.AllTight();
  return out;
}

py::dict LpResult(const std::string& instance_path, const std::string& patterns_path) {
  const Instance in = LoadInstance(instance_path);
  const PatternSet set = LoadPatternSet(patterns_path, in.NumTypes());
  const LpSolution p = SolveExact(BuildPrimal(in, set));
  const LpSolution d = SolveExact(BuildDual(in, set));
  py::dict out;
  out["primal_status"] = LpStatusName(p.status);
  out["dual_status"] = LpStatusName(d.status);
  out["primal"] = ToString(p.objective);
  out["dual"] = ToString(d.objective);
  return out;
}

py::dict Optimum(const ClassOptimum& o) {
  py::dict out;
  out["alpha_exact"] = o.alpha_exact.ToString();
  out["alpha"] = Pair(o.alpha);
  out["bound"] = Pair(o.bound);
  return out;
}

}  // namespace
}  // namespace binlb

PYBIND11_MODULE(_binlb, m) {
  using namespace binlb;
  m.doc() = "Exact lower-bound verification for online bin packing";

  py::register_exception<SchemaError>(m, "SchemaError");
  py::register_exception<AmbiguousComparison>(m, "AmbiguousComparison");

  m.def("closed_form_bound", [](int d) { return ToString(ClosedFormBound(d)); },
        py::arg("d"));
  m.def("ineq1",
        [](int d, const std::string& mj, const std::string& y) {
          return ToString(Ineq1(d, ParseRational(mj), ParseRational(y)));
        },
        py::arg("d"), py::arg("m"), py::arg("y"));
  m.def("ineq2",
        [](int d, const std::string& mj, const std::string& y, const std::string& y_next) {
          return ToString(
              Ineq2(d, ParseRational(mj), ParseRational(y), ParseRational(y_next)));
        },
        py::arg("d"), py::arg("m"), py::arg("y"), py::arg("y_next"));
  m.def("ineq3",
        [](int d, const std::string& y) { return ToString(Ineq3(d, ParseRational(y))); },
        py::arg("d"), py::arg("y_h"));
  m.def("equalize",
        [](int d, int h, const std::string& tol) {
          return Pair(Equalize(d, h, ParseRational(tol)).ratio);
        },
        py::arg("d"), py::arg("h"), py::arg("tol") = "1/1000000000000");
  m.def("b1_optimize",
        [](const std::string& tol) { return Optimum(B1Optimize(ParseRational(tol))); },
        py::arg("tol") = "1/1000000000");
  m.def("b2_optimize",
        [](const std::string& tol) { return Optimum(B2Optimize(ParseRational(tol))); },
        py::arg("tol") = "1/1000000000");
  m.def("grid_capacity",
        [](int64_t k, int resolution) {
          AnchorGrid grid;
          grid.resolution = resolution;
          return GridCapacity(k, grid);
        },
        py::arg("k"), py::arg("resolution") = 420);
  m.def("verify_dual", &DualResult, py::arg("instance"), py::arg("certificate"));
  m.def("verify_opt", &SchemeResult, py::arg("instance"), py::arg("scheme"));
  m.def("verify_primal", &PrimalResult, py::arg("instance"), py::arg("primal"));
  m.def("solve_lp", &LpResult, py::arg("instance"), py::arg("patterns"));
}
