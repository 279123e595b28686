#include "m3/board.hpp"

#include <cctype>
#include <sstream>

namespace m3 {

std::string to_matrix_text(const Board& board) {
    std::ostringstream out;
    out << '[';
    for (int r = 0; r < board.rows(); ++r) {
        if (r > 0) out << ", ";
        out << '[';
        for (int c = 0; c < board.cols(); ++c) {
            if (c > 0) out << ", ";
            out << board.at(r, c);
        }
        out << ']';
    }
    out << ']';
    return out.str();
}

namespace {

struct Cursor {
    const std::string& text;
    size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!eat(c)) throw ParseError(std::string("expected '") + c + "' at offset " + std::to_string(pos));
    }

    int integer() {
        skip_ws();
        bool quoted = eat('\'');
        skip_ws();
        size_t start = pos;
        if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start || (pos == start + 1 && !std::isdigit(static_cast<unsigned char>(text[start]))))
            throw ParseError("expected integer at offset " + std::to_string(start));
        int value = std::stoi(text.substr(start, pos - start));
        if (quoted) expect('\'');
        return value;
    }
};

}  // namespace

Board parse_matrix_text(const std::string& text, int max_color) {
    Cursor cur{text};
    cur.expect('[');
    std::vector<int> cells;
    int cols = -1;
    int rows = 0;
    while (true) {
        cur.expect('[');
        int row_len = 0;
        if (!cur.eat(']')) {
            do {
                int v = cur.integer();
                if (v < -1 || v > max_color)
                    throw ParseError("cell code " + std::to_string(v) + " out of range");
                cells.push_back(v);
                ++row_len;
            } while (cur.eat(','));
            cur.expect(']');
        }
        ++rows;
        if (cols < 0)
            cols = row_len;
        else if (cols != row_len)
            throw ParseError("ragged rows: expected " + std::to_string(cols) + " columns, got " +
                             std::to_string(row_len));
        if (!cur.eat(',')) break;
    }
    cur.expect(']');
    cur.skip_ws();
    if (cur.pos != text.size()) throw ParseError("trailing content after matrix");
    if (cols <= 0) throw ParseError("empty matrix");
    return Board(rows, cols, std::move(cells));
}

Board swap_cells(const Board& board, const Move& move) {
    if (!board.in_bounds(move.a) || !board.in_bounds(move.b))
        throw std::out_of_range("swap position out of bounds");
    if (!move.adjacent()) throw std::invalid_argument("swap positions are not adjacent");
    Board out = board;
    int va = out.at(move.a);
    out.set(move.a, out.at(move.b));
    out.set(move.b, va);
    return out;
}

}  // namespace m3
