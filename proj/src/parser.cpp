#include "hybridcp/expr.hpp"

#include <cctype>
#include <charconv>
#include <optional>

namespace hybridcp {

ParseError::ParseError(std::string source, std::size_t position, std::string detail)
    : std::runtime_error("\"" + source + "\": position " + std::to_string(position) + ": " +
                         detail),
      source_(std::move(source)),
      position_(position),
      detail_(std::move(detail))
{
}

namespace {

class Parser {
public:
    Parser(std::string_view src, std::size_t arity) : src_(src), arity_(arity) {}

    Relation parse_relation()
    {
        ExprNode lhs = parse_expr();
        skip_ws();
        auto rel = read_relop();
        if (!rel) {
            if (at_end()) {
                fail(pos_, "missing relational operator (=, <, >, <=, >=)");
            }
            fail(pos_, unexpected());
        }
        ExprNode rhs = parse_expr();
        skip_ws();
        if (!at_end()) {
            if (peek_relop()) {
                fail(pos_, "more than one relational operator");
            }
            fail(pos_, unexpected());
        }
        return Relation{std::move(lhs), *rel, std::move(rhs)};
    }

private:
    std::string_view src_;
    std::size_t arity_;
    std::size_t pos_ = 0;
    std::size_t depth_ = 0;

    static constexpr std::size_t kMaxDepth = 256;

    struct DepthGuard {
        Parser& p;
        explicit DepthGuard(Parser& parser) : p(parser)
        {
            if (++p.depth_ > kMaxDepth) {
                p.fail(p.pos_, "expression nested too deeply");
            }
        }
        ~DepthGuard() { --p.depth_; }
    };

    [[noreturn]] void fail(std::size_t at, std::string detail) const
    {
        throw ParseError(std::string(src_), at, std::move(detail));
    }

    bool at_end() const { return pos_ >= src_.size(); }

    void skip_ws()
    {
        while (!at_end() && std::isspace(static_cast<unsigned char>(src_[pos_]))) {
            ++pos_;
        }
    }

    char peek()
    {
        skip_ws();
        return at_end() ? '\0' : src_[pos_];
    }

    std::string unexpected()
    {
        skip_ws();
        if (at_end()) {
            return "unexpected end of input";
        }
        return std::string("unexpected character '") + src_[pos_] + "'";
    }

    bool peek_relop()
    {
        const char c = peek();
        return c == '=' || c == '<' || c == '>';
    }

    std::optional<RelOp> read_relop()
    {
        const char c = peek();
        if (c == '=') {
            ++pos_;
            return RelOp::Eq;
        }
        if (c == '<' || c == '>') {
            ++pos_;
            const bool or_equal = !at_end() && src_[pos_] == '=';
            if (or_equal) {
                ++pos_;
            }
            if (c == '<') {
                return or_equal ? RelOp::Le : RelOp::Lt;
            }
            return or_equal ? RelOp::Ge : RelOp::Gt;
        }
        return std::nullopt;
    }

    ExprNode parse_expr()
    {
        ExprNode lhs = parse_term();
        for (;;) {
            const char c = peek();
            if (c != '+' && c != '-') {
                return lhs;
            }
            ++pos_;
            ExprNode rhs = parse_term();
            lhs = ExprNode::make_binary(c == '+' ? BinaryOp::Add : BinaryOp::Sub, std::move(lhs),
                                        std::move(rhs));
        }
    }

    ExprNode parse_term()
    {
        ExprNode lhs = parse_unary();
        for (;;) {
            const char c = peek();
            if (c != '*' && c != '/') {
                return lhs;
            }
            ++pos_;
            ExprNode rhs = parse_unary();
            lhs = ExprNode::make_binary(c == '*' ? BinaryOp::Mul : BinaryOp::Div, std::move(lhs),
                                        std::move(rhs));
        }
    }

    ExprNode parse_unary()
    {
        DepthGuard guard(*this);
        if (peek() == '-') {
            ++pos_;
            return ExprNode::make_unary(UnaryOp::Neg, parse_unary());
        }
        return parse_primary();
    }

    ExprNode parse_primary()
    {
        const char c = peek();
        if (c == '(') {
            const std::size_t open = pos_++;
            ExprNode inner = parse_expr();
            if (peek() != ')') {
                if (at_end()) {
                    fail(open, "unbalanced parenthesis: '(' is never closed");
                }
                if (peek_relop()) {
                    fail(pos_, "relational operator inside parentheses");
                }
                fail(pos_, unexpected() + ", expected ')'");
            }
            ++pos_;
            return inner;
        }
        if (c == '{') {
            return parse_variable();
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            return parse_number();
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            return parse_call();
        }
        if (c == ')') {
            fail(pos_, "unbalanced parenthesis: unexpected ')'");
        }
        if (at_end()) {
            fail(pos_, "unexpected end of input, expected an operand");
        }
        fail(pos_, unexpected() + ", expected an operand");
    }

    ExprNode parse_variable()
    {
        const std::size_t open = pos_++;
        skip_ws();
        const std::size_t digits = pos_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
            ++pos_;
        }
        if (digits == pos_) {
            fail(digits, "expected a variable index after '{'");
        }
        std::size_t index = 0;
        auto [ptr, ec] = std::from_chars(src_.data() + digits, src_.data() + pos_, index);
        if (ec != std::errc()) {
            fail(digits, "variable index out of range");
        }
        if (peek() != '}') {
            fail(pos_, "expected '}' to close variable reference");
        }
        ++pos_;
        if (index >= arity_) {
            fail(open, "variable {" + std::to_string(index) + "} out of range (arity " +
                           std::to_string(arity_) + ")");
        }
        return ExprNode::variable(index);
    }

    ExprNode parse_number()
    {
        const std::size_t start = pos_;
        auto digit = [&](std::size_t i) {
            return i < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i]));
        };
        std::size_t i = pos_;
        bool any_digit = false;
        while (digit(i)) {
            ++i;
            any_digit = true;
        }
        if (i < src_.size() && src_[i] == '.') {
            ++i;
            while (digit(i)) {
                ++i;
                any_digit = true;
            }
        }
        if (!any_digit) {
            fail(start, "malformed number");
        }
        if (i < src_.size() && (src_[i] == 'e' || src_[i] == 'E')) {
            std::size_t j = i + 1;
            if (j < src_.size() && (src_[j] == '+' || src_[j] == '-')) {
                ++j;
            }
            if (!digit(j)) {
                fail(start, "malformed number: exponent has no digits");
            }
            while (digit(j)) {
                ++j;
            }
            i = j;
        }
        // "1.2.3", "2e5e1", "3x" and the like
        if (i < src_.size() &&
            (src_[i] == '.' || std::isalpha(static_cast<unsigned char>(src_[i])) ||
             src_[i] == '_')) {
            fail(start, "malformed number");
        }
        double value = 0.0;
        auto [ptr, ec] = std::from_chars(src_.data() + start, src_.data() + i, value);
        if (ec != std::errc() || ptr != src_.data() + i) {
            fail(start, "malformed number");
        }
        pos_ = i;
        return ExprNode::constant(value);
    }

    ExprNode parse_call()
    {
        const std::size_t start = pos_;
        while (!at_end() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                             src_[pos_] == '_')) {
            ++pos_;
        }
        const std::string_view ident = src_.substr(start, pos_ - start);
        const auto unary = unary_from_name(ident);
        const auto binary = binary_function_from_name(ident);
        if (!unary && !binary) {
            fail(start, "unknown function '" + std::string(ident) + "'");
        }
        if (peek() != '(') {
            fail(pos_, "expected '(' after function name '" + std::string(ident) + "'");
        }
        const std::size_t open = pos_++;
        ExprNode first = parse_expr();
        if (binary) {
            if (peek() != ',') {
                fail(pos_, "function '" + std::string(ident) + "' takes two arguments");
            }
            ++pos_;
            ExprNode second = parse_expr();
            expect_close(open, ident);
            return ExprNode::make_binary(*binary, std::move(first), std::move(second));
        }
        if (peek() == ',') {
            fail(pos_, "function '" + std::string(ident) + "' takes one argument");
        }
        expect_close(open, ident);
        return ExprNode::make_unary(*unary, std::move(first));
    }

    void expect_close(std::size_t open, std::string_view ident)
    {
        if (peek() == ')') {
            ++pos_;
            return;
        }
        if (at_end()) {
            fail(open, "unbalanced parenthesis in call to '" + std::string(ident) + "'");
        }
        fail(pos_, unexpected() + ", expected ')'");
    }
};

} // namespace

Relation parse(std::string_view source, std::size_t arity)
{
    if (source.find_first_not_of(" \t\r\n") == std::string_view::npos) {
        throw ParseError(std::string(source), 0, "empty constraint");
    }
    return Parser(source, arity).parse_relation();
}

} // namespace hybridcp
