#include "corpusforge/textnorm.hpp"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/locid.h>
#include <unicode/utf8.h>

#include "corpusforge/error.hpp"

namespace corpusforge {

namespace {

enum class CharClass { word, apostrophe, hyphen, separator };

CharClass classify(UChar32 c) {
  switch (c) {
    case U'\'':
    case 0x2019:  // right single quotation mark
    case 0x02BC:  // modifier letter apostrophe
      return CharClass::apostrophe;
    case U'-':
    case 0x2010:  // hyphen
    case 0x2011:  // non-breaking hyphen
      return CharClass::hyphen;
    default:
      break;
  }
  const auto mask = U_GET_GC_MASK(c);
  if (mask & (U_GC_L_MASK | U_GC_M_MASK | U_GC_N_MASK)) return CharClass::word;
  return CharClass::separator;
}

const icu::Normalizer2& nfc() {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* n = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status) || n == nullptr) throw Error("ICU NFC normalizer unavailable");
  return *n;
}

icu::UnicodeString nfc_normalize(const icu::UnicodeString& s) {
  UErrorCode status = U_ZERO_ERROR;
  auto out = nfc().normalize(s, status);
  if (U_FAILURE(status)) throw Error(std::string("ICU normalization failed: ") + u_errorName(status));
  return out;
}

void append_utf8(std::string& out, UChar32 c) {
  char buf[U8_MAX_LENGTH];
  int32_t len = 0;
  UBool error = false;
  U8_APPEND(reinterpret_cast<uint8_t*>(buf), len, U8_MAX_LENGTH, c, error);
  if (!error) out.append(buf, static_cast<std::size_t>(len));
}

}  // namespace

std::string NormalizedText::joined() const {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += ' ';
    out += tokens[i];
  }
  return out;
}

std::string_view trim(std::string_view s) noexcept {
  constexpr std::string_view ws = " \t\r\n\f\v";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::size_t utf8_length(std::string_view s) noexcept {
  std::size_t n = 0;
  for (unsigned char c : s) {
    if ((c & 0xC0) != 0x80) ++n;
  }
  return n;
}

NormalizedText normalize(std::string_view raw) {
  auto text = icu::UnicodeString::fromUTF8(icu::StringPiece(raw.data(), static_cast<int32_t>(raw.size())));
  text = nfc_normalize(text);
  text.toLower(icu::Locale::getRoot());
  text = nfc_normalize(text);

  NormalizedText out;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) out.tokens.push_back(std::move(current));
    current.clear();
  };

  const int32_t n = text.length();
  for (int32_t i = 0; i < n;) {
    const UChar32 c = text.char32At(i);
    const int32_t next = text.moveIndex32(i, 1);
    switch (classify(c)) {
      case CharClass::word:
        append_utf8(current, c);
        break;
      case CharClass::apostrophe:
      case CharClass::hyphen: {
        const bool joins = !current.empty() && next < n && classify(text.char32At(next)) == CharClass::word;
        if (joins) {
          current += classify(c) == CharClass::apostrophe ? '\'' : '-';
        } else {
          flush();
        }
        break;
      }
      case CharClass::separator:
        flush();
        break;
    }
    i = next;
  }
  flush();
  return out;
}

std::size_t normalized_length(std::string_view raw) { return utf8_length(normalize(raw).joined()); }

}  // namespace corpusforge
