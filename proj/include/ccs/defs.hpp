#ifndef CCS_DEFS_HPP
#define CCS_DEFS_HPP

#include <map>
#include <string_view>
#include <vector>

#include "ccs/syntax.hpp"

namespace ccs {

// Agents from a definition file, fully compiled: references to earlier
// agents are expanded, self-references become rec binders.
struct Definitions {
  std::vector<Name> order;
  std::map<Name, Process> agents;

  bool defined(const Name& n) const { return agents.count(n) != 0; }
  const Process& resolve(const Name& n) const;
};

// Definition-file format: `agent NAME = proc ;` entries, `#` comments.
// A definition may reference itself (compiled to rec) or earlier agents;
// anything else is a DefinitionError (mutual recursion is rejected).
Definitions load_definitions(std::string_view text);

}  // namespace ccs

#endif
