#include "kuranishi/scalar.hpp"

namespace kuranishi {

Rational rational_from_string(std::string_view text)
{
    if (text.empty())
        fail("SyntaxError", "empty rational literal");
    std::string s(text);
    for (char c : s) {
        if (!(c == '-' || c == '/' || (c >= '0' && c <= '9')))
            fail("SyntaxError", "bad character in rational literal '" + s + "'");
    }
    auto slash = s.find('/');
    if (slash != std::string::npos && s.find('/', slash + 1) != std::string::npos)
        fail("SyntaxError", "bad rational literal '" + s + "'");
    Rational r;
    if (r.set_str(s, 10) != 0)
        fail("SyntaxError", "bad rational literal '" + s + "'");
    if (r.get_den() == 0)
        fail("SyntaxError", "zero denominator in '" + s + "'");
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& r) { return r.get_str(); }

std::string Scalar::str() const
{
    if (im_ == 0)
        return re_.get_str();
    std::string s;
    if (re_ != 0)
        s = re_.get_str() + (im_ > 0 ? "+" : "");
    if (im_ == 1)
        s += "i";
    else if (im_ == -1)
        s += "-i";
    else
        s += im_.get_str() + "*i";
    return s;
}

} // namespace kuranishi
