#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rsaware/concept_space.hpp"

namespace rsaware {

struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, int line, int col)
        : std::runtime_error(msg + " at " + std::to_string(line) + ":" + std::to_string(col)),
          line(line),
          col(col) {}
    int line;
    int col;
};

// Propositional formula over c1..ck.
// Grammar: & | ! ^ ->, parentheses, variables c<digit>+, constants T/F.
// Precedence: ! > & > ^ > | > ->   (-> is right-associative)
class Formula {
public:
    enum class Op : std::uint8_t { Var, True, False, Not, And, Or, Xor, Implies };

    struct Node {
        Op op;
        int var = -1;  // 0-based variable for Op::Var
        int lhs = -1;
        int rhs = -1;
    };

    static Formula parse(std::string_view text, int k);

    int arity() const { return k_; }
    bool eval(const Concept& c) const;
    std::size_t node_count() const { return nodes_.size(); }
    const Node& root() const { return nodes_[static_cast<std::size_t>(root_)]; }

private:
    friend class FormulaParser;
    int k_ = 0;
    std::vector<Node> nodes_;
    int root_ = -1;

    bool eval_node(int idx, const Concept& c) const;
};

}  // namespace rsaware
