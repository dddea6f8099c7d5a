#include "protoforge/sexpr.hpp"
#include "protoforge/errors.hpp"

#include <cctype>

namespace protoforge {

std::string SExpr::symbol() const
{
    if (atom.size() >= 2 && atom.front() == '|' && atom.back() == '|')
        return atom.substr(1, atom.size() - 2);
    return atom;
}

namespace {

class Reader {
public:
    explicit Reader(std::string_view text) : s_(text) {}

    std::vector<SExpr> all()
    {
        std::vector<SExpr> out;
        for (skip(); pos_ < s_.size(); skip())
            out.push_back(one());
        return out;
    }

private:
    void skip()
    {
        while (pos_ < s_.size()) {
            if (std::isspace(static_cast<unsigned char>(s_[pos_]))) {
                ++pos_;
            } else if (s_[pos_] == ';') {
                while (pos_ < s_.size() && s_[pos_] != '\n')
                    ++pos_;
            } else {
                break;
            }
        }
    }

    SExpr one()
    {
        const char c = s_[pos_];
        if (c == ')')
            throw SmtError("unbalanced ')' at offset " + std::to_string(pos_));
        if (c == '(') {
            ++pos_;
            std::vector<SExpr> items;
            for (skip(); pos_ < s_.size() && s_[pos_] != ')'; skip())
                items.push_back(one());
            if (pos_ >= s_.size())
                throw SmtError("unterminated list");
            ++pos_;
            return SExpr::make_list(std::move(items));
        }
        const std::size_t start = pos_;
        if (c == '|' || c == '"') {
            auto end = s_.find(c, pos_ + 1);
            // "" inside a string literal is an escaped quote
            while (c == '"' && end != std::string_view::npos && end + 1 < s_.size() && s_[end + 1] == '"')
                end = s_.find('"', end + 2);
            if (end == std::string_view::npos)
                throw SmtError(std::string("unterminated ") + (c == '|' ? "quoted symbol" : "string literal"));
            pos_ = end + 1;
            return SExpr::make_atom(std::string(s_.substr(start, pos_ - start)));
        }
        while (pos_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[pos_])) && s_[pos_] != '(' &&
               s_[pos_] != ')' && s_[pos_] != ';')
            ++pos_;
        return SExpr::make_atom(std::string(s_.substr(start, pos_ - start)));
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

void print(const SExpr& e, std::string& out)
{
    if (!e.is_list) {
        out += e.atom;
        return;
    }
    out += '(';
    for (std::size_t i = 0; i < e.items.size(); ++i) {
        if (i)
            out += ' ';
        print(e.items[i], out);
    }
    out += ')';
}

} // namespace

std::vector<SExpr> parse_sexprs(std::string_view text)
{
    return Reader(text).all();
}

std::string to_string(const SExpr& e)
{
    std::string out;
    print(e, out);
    return out;
}

} // namespace protoforge
