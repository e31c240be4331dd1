#pragma once

#include <string>
#include <string_view>

#include "pnsynth/lts.hpp"
#include "pnsynth/petri_net.hpp"

namespace pnsynth {

// LTS text:  [states S...]  [labels L...]  initial S  (arc S L T)*
// '#' starts a comment. Names match [A-Za-z0-9_]+ and may not start with "__".
Lts parse_lts(std::string_view text);
std::string emit_lts(const Lts& lts);

// Net text:  place NAME TOKENS | trans NAME | arc FROM TO [WEIGHT]
PetriNet parse_pn(std::string_view text);
std::string emit_pn(const PetriNet& net);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);
Lts read_lts(const std::string& path);
PetriNet read_pn(const std::string& path);

}  // namespace pnsynth
