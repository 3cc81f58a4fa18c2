#pragma once

#include <random>
#include <string>
#include <vector>

#include "fragmentc/composer.hpp"
#include "fragmentc/grammar.hpp"

// Independent reference recognizers for small random grammars. Grammars use
// productions A..D over the terminals a, b, c, ";" and IDENT; a, b and c are
// keywords, so the only identifier token is "z".
namespace fragmentc::testing {

using TokenList = std::vector<std::string>;

GrammarFragment random_grammar(std::mt19937& rng);

/// Half of the inputs are sampled from the grammar, the rest are random
/// token strings; never longer than `maxTokens`.
TokenList random_input(const GrammarFragment& grammar, std::mt19937& rng, std::size_t maxTokens);

std::string join_tokens(const TokenList& tokens);

/// Bottom-up table over (production, position) with ordered choice and
/// greedy repetition, filled right to left with a fixpoint per position.
/// Only meaningful for grammars without left recursion.
bool ordered_choice_accepts(const GrammarFragment& grammar, const TokenList& tokens);

/// Context-free reading of the same grammar: sets of end positions, every
/// alternative explored.
bool context_free_accepts(const GrammarFragment& grammar, const TokenList& tokens);

/// The fragment as a one-language composition started at its first production.
Result<ComposedLanguage> compose_single(const GrammarFragment& grammar);

}  // namespace fragmentc::testing
