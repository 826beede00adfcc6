#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace aev {

/// S-expression as read from SMT-LIB2 text.
struct Sexpr {
    enum class Type { Symbol, Numeral, Keyword, String, List };

    Type type = Type::List;
    /// Atom text; for quoted symbols the text between the bars.
    std::string atom;
    bool quoted = false;
    std::vector<Sexpr> items;
    /// Byte offset of the first character in the source text.
    std::size_t offset = 0;

    bool is_list() const { return type == Type::List; }
    bool is_symbol(std::string_view name) const { return type == Type::Symbol && !quoted && atom == name; }
};

/// Reads s-expressions from a text starting at a given offset. ';' is not treated as a comment
/// introducer, so the reader can be embedded in formats that use ';' as a terminator.
class SexprReader {
public:
    explicit SexprReader(std::string_view text, std::size_t pos = 0) : text_(text), pos_(pos) {}

    /// Reads one s-expression; throws ParseError on malformed input or end of text.
    Sexpr read();
    /// True when only whitespace remains.
    bool at_end();
    std::size_t position() const { return pos_; }

private:
    void skip_ws();
    [[noreturn]] void fail(const std::string & message, std::size_t at) const;

    std::string_view text_;
    std::size_t pos_;
};

/// 1-based (line, column) of a byte offset.
std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t offset);

/// Renders an s-expression back to text (single line).
std::string to_string(const Sexpr & e);

} // namespace aev
