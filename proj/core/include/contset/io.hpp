#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "contset/automata.hpp"
#include "contset/pcp.hpp"
#include "contset/transducer.hpp"

namespace contset {

/// Line based text formats. Blank lines and '#' comments are ignored; each
/// line is `key: values`. Parsers throw ParseError with a line number.

using Automaton = std::variant<Nba, Dba, DetMuller>;

Automaton parse_automaton(std::string_view text);
Transducer parse_transducer(std::string_view text);
PcpInstance parse_pcp(std::string_view text);

/// Buchi and deterministic Muller inputs are accepted; Muller tables are
/// translated with to_nba().
Nba parse_as_nba(std::string_view text);
Dba parse_as_dba(std::string_view text);
DetMuller parse_as_muller(std::string_view text);
SyncTransducer parse_as_sync(std::string_view text);

std::string to_text(const Nba& a);
std::string to_text(const Dba& a);
std::string to_text(const DetMuller& m);
std::string to_text(const Automaton& a);
std::string to_text(const Transducer& t);
std::string to_text(const SyncTransducer& t);
std::string to_text(const PcpInstance& inst);
std::string to_text(const PrefixDfa& d);

std::string to_dot(const Nba& a);
std::string to_dot(const DetMuller& m);
std::string to_dot(const Transducer& t);
std::string to_dot(const PrefixDfa& d);

}  // namespace contset
