// classic.hpp — chain/fan/mixed network constructors and the bridge to
// ordinary positional, mixed-radix, and rational-base numeration.
//
// encode() runs the engine over a generated chain; oracle_digits() is the
// independent greedy div/mod route the engine is checked against; decode()
// values digits through derived conservation weights. The three routes are
// deliberately separate.

#pragma once

#include "sns/core.hpp"

#include <span>

namespace sns {

/// A linear chain: entities c0..c(width-1), one operator per adjacent
/// pair. radices and rates have width-1 entries; empty rates mean all 1.
struct ChainSpec {
    std::size_t width = 1;
    std::vector<Cardinal> radices;
    std::vector<Cardinal> rates;

    static ChainSpec uniform(std::size_t width, Cardinal radix, Cardinal rate = 1);
    bool unit_rates() const;
};

/// c0/n0 -> c1*r0, c1/n1 -> c2*r1, ... Throws std::invalid_argument on
/// malformed specs (list lengths, zero radix).
Cao make_chain(const ChainSpec& spec);

/// One distribution operator: c0/radix -> (c1*rates[0], c2*rates[1], ...).
Cao make_fan_out(const Cardinal& radix, std::vector<Cardinal> rates);

/// One fusion operator: (c0/radices[0], c1/radices[1], ...) -> cLast*rate.
Cao make_fan_in(std::vector<Cardinal> radices, const Cardinal& rate);

/// One (w,v) operator over w+v entities: operands c0..c(w-1), images
/// cw..c(w+v-1), with the given radix and rate vectors.
Cao make_mixed(std::size_t w, std::size_t v, std::vector<Cardinal> radices,
               std::vector<Cardinal> rates);

/// Loads `value` into c0 and runs the chain to fixpoint (synchronous);
/// returns the final cardinals in entity order, low position first. The
/// last entity absorbs whatever magnitude remains.
std::vector<Cardinal> encode(const Cardinal& value, const ChainSpec& spec);

/// Values a digit list against the chain's derived weights:
/// sum digits[k] * weight(ck), exact.
Rational decode(std::span<const Cardinal> digits, const ChainSpec& spec);

/// Classic greedy conversion, engine-free: d_k = N mod n_k, N /= n_k; the
/// final digit takes the remaining N. Returns radices.size()+1 digits.
/// Ground truth for unit-rate chains only.
std::vector<Cardinal> oracle_digits(const Cardinal& value, std::span<const Cardinal> radices);

/// Digits needed to hold `value` in base `radix` (at least 1); the chain
/// width at which a unit-rate encode keeps every digit below its radix.
std::size_t chain_width_for(const Cardinal& value, const Cardinal& radix);

}  // namespace sns
