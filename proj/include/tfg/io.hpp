#ifndef TFG_IO_HPP
#define TFG_IO_HPP

#include <string>

#include "tfg/oracle.hpp"
#include "tfg/orbit.hpp"
#include "tfg/rewrite.hpp"
#include "tfg/weld.hpp"

namespace tfg {

// System literal: `per=[2]`, `pre=[2] per=[3]`.  The parser also accepts an
// optional leading `bases`.
std::string to_string(const OdometerSystem& sys);
OdometerSystem parse_system(const std::string& text);

// Cylinder literal `[d1d2...]` (digit characters while every relevant base
// is at most 10, comma-separated otherwise); `[]` is the whole space.
std::string to_string(const OdometerSystem& sys, Cylinder c);

// Clopen set literal: cylinders joined by `+`; `empty` for the empty set.
std::string to_string(const ClopenSet& a);

// Element literal, e.g. `D2@1{0:3,1:-1}`: `D` + system + `@` + depth +
// the full exponent table in code order.  The system prints as bare period
// digits when there is no preperiod and all period entries are single
// digits, and as `pre=[...]per=[...]` otherwise.  Bit-exact round trip.
std::string to_string(const Element& h);
Element parse_element(const std::string& text);

// Word rendering: `g_[1]^2 g^-1`; adjacent equal tokens collapse into a
// power, the empty word prints as `id`.
std::string to_string(const GeneratorWord& w);
std::string to_string(const NormalForm& nf);

std::string to_string(const Rational& r);

// Reports (stable field order; golden tests compare bytes).
std::string analyze_report(const Element& h, int64_t depth_cap = 64);
std::string simulate_report(const Element& h, const OrbitStats& stats);
std::string pure_cycles_report(const Element& h);
std::string weld_report(const WeldedSystem& w, const WeldAnalysis* analysis);

std::string to_string(const WeldedSystem::TaggedCylinder& c, const WeldedSystem& w);

}  // namespace tfg

#endif
