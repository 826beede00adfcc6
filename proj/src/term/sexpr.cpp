#include "aev/sexpr.hpp"

#include "aev/error.hpp"

#include <algorithm>
#include <cctype>

namespace aev {

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t offset) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

void SexprReader::fail(const std::string & message, std::size_t at) const {
    auto [line, col] = line_column(text_, at);
    throw ParseError(message, line, col);
}

void SexprReader::skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) { ++pos_; }
}

bool SexprReader::at_end() {
    skip_ws();
    return pos_ >= text_.size();
}

Sexpr SexprReader::read() {
    skip_ws();
    if (pos_ >= text_.size()) { fail("unexpected end of input in s-expression", pos_); }
    Sexpr e;
    e.offset = pos_;
    char c = text_[pos_];
    if (c == '(') {
        ++pos_;
        e.type = Sexpr::Type::List;
        for (;;) {
            skip_ws();
            if (pos_ >= text_.size()) { fail("unbalanced '('", e.offset); }
            if (text_[pos_] == ')') {
                ++pos_;
                return e;
            }
            e.items.push_back(read());
        }
    }
    if (c == ')') { fail("unexpected ')'", pos_); }
    if (c == '|') {
        std::size_t end = text_.find('|', pos_ + 1);
        if (end == std::string_view::npos) { fail("unterminated quoted symbol", pos_); }
        e.type = Sexpr::Type::Symbol;
        e.quoted = true;
        e.atom = std::string(text_.substr(pos_ + 1, end - pos_ - 1));
        pos_ = end + 1;
        return e;
    }
    if (c == '"') {
        std::string value;
        std::size_t i = pos_ + 1;
        for (;; ++i) {
            if (i >= text_.size()) { fail("unterminated string literal", pos_); }
            if (text_[i] == '"') {
                if (i + 1 < text_.size() && text_[i + 1] == '"') {
                    value.push_back('"');
                    ++i;
                    continue;
                }
                break;
            }
            value.push_back(text_[i]);
        }
        e.type = Sexpr::Type::String;
        e.atom = std::move(value);
        pos_ = i + 1;
        return e;
    }
    std::size_t start = pos_;
    while (pos_ < text_.size()) {
        char d = text_[pos_];
        if (std::isspace(static_cast<unsigned char>(d)) || d == '(' || d == ')' || d == '|' || d == '"' || d == ';') {
            break;
        }
        ++pos_;
    }
    if (pos_ == start) { fail(std::string("unexpected character '") + c + "'", pos_); }
    e.atom = std::string(text_.substr(start, pos_ - start));
    bool numeral = std::all_of(e.atom.begin(), e.atom.end(), [](char d) { return std::isdigit(static_cast<unsigned char>(d)); });
    if (numeral) {
        e.type = Sexpr::Type::Numeral;
    } else if (e.atom.front() == ':') {
        e.type = Sexpr::Type::Keyword;
    } else {
        e.type = Sexpr::Type::Symbol;
    }
    return e;
}

std::string to_string(const Sexpr & e) {
    switch (e.type) {
        case Sexpr::Type::List: {
            std::string out = "(";
            for (std::size_t i = 0; i < e.items.size(); ++i) {
                if (i) { out += ' '; }
                out += to_string(e.items[i]);
            }
            return out + ")";
        }
        case Sexpr::Type::String: return "\"" + e.atom + "\"";
        case Sexpr::Type::Symbol: return e.quoted ? "|" + e.atom + "|" : e.atom;
        default: return e.atom;
    }
}

} // namespace aev
