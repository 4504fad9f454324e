/** \file
 * Fixed-width classical register value. Text form is little-endian: qubit 0
 * is the rightmost character, matching how counts dictionaries print.
 */
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qdc {

class BitString {
public:
    BitString() = default;
    explicit BitString(std::uint32_t width) : bits_(width, 0) {}

    static BitString zeros(std::uint32_t width) { return BitString(width); }
    static BitString ones(std::uint32_t width) {
        BitString b(width);
        for (auto& v : b.bits_) v = 1;
        return b;
    }

    /// Parses the little-endian text form ("01" -> qubit 0 = 1, qubit 1 = 0).
    static BitString parse(const std::string& text) {
        BitString b(static_cast<std::uint32_t>(text.size()));
        for (std::size_t i = 0; i < text.size(); ++i) {
            const char ch = text[text.size() - 1 - i];
            if (ch != '0' && ch != '1')
                throw std::invalid_argument("bitstring: expected only 0/1, got '" +
                                            std::string(1, ch) + "'");
            b.bits_[i] = ch == '1';
        }
        return b;
    }

    std::uint32_t width() const { return static_cast<std::uint32_t>(bits_.size()); }

    bool get(std::uint32_t q) const { return bits_.at(q) != 0; }
    void set(std::uint32_t q, bool v) { bits_.at(q) = v ? 1 : 0; }
    void flip(std::uint32_t q) { bits_.at(q) ^= 1; }

    std::string str() const {
        std::string s(bits_.size(), '0');
        for (std::size_t i = 0; i < bits_.size(); ++i)
            if (bits_[i]) s[bits_.size() - 1 - i] = '1';
        return s;
    }

    /// Zero-extends to `width` (appends high qubits); errors on truncation.
    BitString padded(std::uint32_t width) const {
        if (width < bits_.size())
            throw std::invalid_argument("bitstring: cannot pad to a smaller width");
        BitString b(width);
        for (std::size_t i = 0; i < bits_.size(); ++i) b.bits_[i] = bits_[i];
        return b;
    }

    bool operator==(const BitString&) const = default;

private:
    std::vector<std::uint8_t> bits_;
};

}  // namespace qdc
