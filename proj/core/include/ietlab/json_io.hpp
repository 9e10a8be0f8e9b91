#pragma once

#include <memory>
#include <string>

#include "ietlab/cocycle.hpp"
#include "ietlab/dist.hpp"
#include "ietlab/iet.hpp"

namespace ietlab {

// IET spec file: {"alphabet":[...], "pi0":[...], "pi1":[...], "lambda":[...],
// "total_length": number}; the alphabet order fixes the column order of all
// emitted matrices.
Iet<double> load_iet_json(const std::string& path);
std::string iet_to_json(const Iet<double>& T);
void save_iet_json(const Iet<double>& T, const std::string& path);

// Cocycle spec: {"kind":"log","Cplus":[...],"Cminus":[...],
//                "smooth":"none"|[[...]...], "form":"wrapped"|"local"}
// or {"kind":"theta","g":"const1"|"log_e_plus_x","pieces":[[term...]...]}
// with term {"m":..,"k":..,"parity":"odd"|"even","scale":..,"const":..}
// or {"kind":"const","value":v}.
CocyclePtr load_cocycle_json(const std::string& path, const Iet<double>& T);
CocyclePtr parse_cocycle_json(const std::string& text, const Iet<double>& T);

// Saddle jet: {"m":3, "V0":1.0, "jet":[[[re,im]],[[re,im],[re,im]],...]}
SaddleJet load_jet_json(const std::string& path);

// Atomic write: temp file in the same directory, then rename.
void atomic_write(const std::string& path, const std::string& content);

}  // namespace ietlab
