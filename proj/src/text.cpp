#include "qanet/text.hpp"

#include <cstdint>

namespace qanet {
namespace {

enum class CharClass { word, apostrophe, star, separator };

struct Decoded {
    char32_t cp;
    std::size_t length;
};

constexpr char32_t kInvalid = 0xFFFD;

Decoded decode(std::string_view s, std::size_t i) {
    const auto b0 = static_cast<unsigned char>(s[i]);
    if (b0 < 0x80)
        return {b0, 1};
    std::size_t len = 0;
    char32_t cp = 0;
    if ((b0 & 0xE0) == 0xC0) {
        len = 2;
        cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
        len = 3;
        cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
        len = 4;
        cp = b0 & 0x07;
    } else {
        return {kInvalid, 1};
    }
    if (i + len > s.size())
        return {kInvalid, 1};
    for (std::size_t k = 1; k < len; ++k) {
        const auto b = static_cast<unsigned char>(s[i + k]);
        if ((b & 0xC0) != 0x80)
            return {kInvalid, 1};
        cp = (cp << 6) | (b & 0x3F);
    }
    // Overlong forms and surrogates.
    if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) || (len == 4 && cp < 0x10000)
        || (cp >= 0xD800 && cp <= 0xDFFF) || cp > 0x10FFFF)
        return {kInvalid, 1};
    return {cp, len};
}

void encode(char32_t cp, std::string &out) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

CharClass classify(char32_t cp) {
    if (cp < 0x80) {
        if ((cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z') || (cp >= '0' && cp <= '9'))
            return CharClass::word;
        if (cp == '\'')
            return CharClass::apostrophe;
        if (cp == '*')
            return CharClass::star;
        return CharClass::separator;
    }
    if (cp <= 0xBF)
        return (cp == 0xAA || cp == 0xB5 || cp == 0xBA) ? CharClass::word : CharClass::separator;
    if (cp == 0xD7 || cp == 0xF7)
        return CharClass::separator;
    if (cp == 0x2018 || cp == 0x2019)
        return CharClass::apostrophe;
    if ((cp >= 0x2000 && cp <= 0x206F) || (cp >= 0x20A0 && cp <= 0x2BFF)
        || (cp >= 0x3000 && cp <= 0x303F) || (cp >= 0xFE00 && cp <= 0xFE0F) || cp == 0xFEFF
        || cp == kInvalid || (cp >= 0x1F000 && cp <= 0x1FAFF) || (cp >= 0xE0000 && cp <= 0xE007F))
        return CharClass::separator;
    return CharClass::word;
}

char32_t fold(char32_t cp) {
    if (cp < 0x80)
        return (cp >= 'A' && cp <= 'Z') ? cp + 0x20 : cp;
    if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7)
        return cp + 0x20;
    if (cp == 0x0130)
        return U'i';
    if ((cp >= 0x0100 && cp <= 0x0137) || (cp >= 0x014A && cp <= 0x0177))
        return cp | 1U;
    if ((cp >= 0x0139 && cp <= 0x0148) || (cp >= 0x0179 && cp <= 0x017E))
        return (cp & 1U) ? cp + 1 : cp;
    if (cp == 0x0178)
        return 0xFF;
    if (cp >= 0x0391 && cp <= 0x03A9 && cp != 0x03A2)
        return cp + 0x20;
    if (cp == 0x0386)
        return 0x03AC;
    if (cp >= 0x0388 && cp <= 0x038A)
        return cp + 0x25;
    if (cp == 0x038C)
        return 0x03CC;
    if (cp == 0x038E || cp == 0x038F)
        return cp + 0x3F;
    if (cp >= 0x0410 && cp <= 0x042F)
        return cp + 0x20;
    if (cp >= 0x0400 && cp <= 0x040F)
        return cp + 0x50;
    return cp;
}

// Drop leading/trailing apostrophes and asterisks (always single-byte).
void flush(std::string &current, std::vector<std::string> &out) {
    std::size_t begin = 0;
    std::size_t end = current.size();
    while (begin < end && (current[begin] == '\'' || current[begin] == '*'))
        ++begin;
    while (end > begin && (current[end - 1] == '\'' || current[end - 1] == '*'))
        --end;
    if (begin < end)
        out.emplace_back(current.substr(begin, end - begin));
    current.clear();
}

} // namespace

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::string current;
    for (std::size_t i = 0; i < text.size();) {
        const auto [cp, len] = decode(text, i);
        i += len;
        switch (classify(cp)) {
        case CharClass::word:
            encode(fold(cp), current);
            break;
        case CharClass::apostrophe:
            current.push_back('\'');
            break;
        case CharClass::star:
            current.push_back('*');
            break;
        case CharClass::separator:
            flush(current, tokens);
            break;
        }
    }
    flush(current, tokens);
    return tokens;
}

std::string to_lower(std::string_view word) {
    std::string out;
    out.reserve(word.size());
    for (std::size_t i = 0; i < word.size();) {
        const auto [cp, len] = decode(word, i);
        if (cp == kInvalid)
            out.append(word.substr(i, len));
        else
            encode(fold(cp), out);
        i += len;
    }
    return out;
}

} // namespace qanet
