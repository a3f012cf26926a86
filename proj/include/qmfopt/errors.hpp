#pragma once

#include <stdexcept>
#include <string>

namespace qmfopt {

/// Thrown by quantizer optimizers when the relay-to-destination link has zero
/// gain; the caller should bypass the relay and use the direct link.
struct RelayLinkAbsent : std::domain_error {
    RelayLinkAbsent() : std::domain_error("relay-destination link gain is zero") {}
};

/// Partition enumeration is explicit (2^N); networks beyond the guard are rejected.
struct TooManyRelays : std::domain_error {
    explicit TooManyRelays(int n)
        : std::domain_error("diamond network with " + std::to_string(n) +
                            " relays exceeds the enumeration guard (20)") {}
};

/// A two-relay optimizer input with a zero link gain.
struct DegenerateGain : std::domain_error {
    DegenerateGain() : std::domain_error("two-relay optimizer requires all four gains > 0") {}
};

/// Scheme/network pairing that does not exist (e.g. DDF on a full-duplex network).
struct InvalidCombination : std::invalid_argument {
    explicit InvalidCombination(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace qmfopt
