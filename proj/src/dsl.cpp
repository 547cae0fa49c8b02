#include "sns/dsl.hpp"

#include <cctype>
#include <sstream>

namespace sns {

const HookRegistry& default_hooks() {
    static const HookRegistry registry = {
        {"div",
         {[](const Cardinal& value, const Cardinal& radix) { return Cardinal(value / radix); },
          [](const Cardinal& value, const Cardinal& radix) { return Cardinal(value % radix); }}},
    };
    return registry;
}

namespace {

enum class Tok {
    Ident,
    Nat,
    LBrace,
    RBrace,
    LParen,
    RParen,
    Comma,
    Semi,
    Colon,
    Slash,
    Star,
    Arrow,
    Equals,
    Hash,
    End,
};

struct Token {
    Tok type = Tok::End;
    std::string text;
    SourceSpan span;
};

const char* token_name(Tok t) {
    switch (t) {
        case Tok::Ident: return "identifier";
        case Tok::Nat: return "number";
        case Tok::LBrace: return "'{'";
        case Tok::RBrace: return "'}'";
        case Tok::LParen: return "'('";
        case Tok::RParen: return "')'";
        case Tok::Comma: return "','";
        case Tok::Semi: return "';'";
        case Tok::Colon: return "':'";
        case Tok::Slash: return "'/'";
        case Tok::Star: return "'*'";
        case Tok::Arrow: return "'->'";
        case Tok::Equals: return "'='";
        case Tok::Hash: return "'#'";
        case Tok::End: return "end of input";
    }
    return "?";
}

struct Lexer {
    std::string_view text;
    std::size_t pos = 0, line = 1, column = 1;
    std::vector<ParseError>& errors;

    explicit Lexer(std::string_view t, std::vector<ParseError>& errs) : text(t), errors(errs) {}

    SourceSpan here(std::size_t length = 1) const {
        return {line, column, pos, std::min(length, text.size() - pos)};
    }

    void advance() {
        if (pos >= text.size()) return;
        if (text[pos] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
        ++pos;
    }

    // Tokenizes the whole input. `#` opens a line comment unless the
    // previously emitted token is the keyword `kind`.
    std::vector<Token> lex() {
        std::vector<Token> tokens;
        auto last_is_kind = [&] {
            return !tokens.empty() && tokens.back().type == Tok::Ident &&
                   tokens.back().text == "kind";
        };
        while (pos < text.size()) {
            char c = text[pos];
            if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
                continue;
            }
            if (c == '#' && !last_is_kind()) {
                while (pos < text.size() && text[pos] != '\n') advance();
                continue;
            }
            SourceSpan span = here();
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                std::size_t start = pos;
                while (pos < text.size() &&
                       (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
                    advance();
                span.length = pos - start;
                tokens.push_back({Tok::Ident, std::string(text.substr(start, pos - start)), span});
                continue;
            }
            if (std::isdigit(static_cast<unsigned char>(c))) {
                std::size_t start = pos;
                while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
                    advance();
                span.length = pos - start;
                tokens.push_back({Tok::Nat, std::string(text.substr(start, pos - start)), span});
                continue;
            }
            Tok type;
            switch (c) {
                case '{': type = Tok::LBrace; break;
                case '}': type = Tok::RBrace; break;
                case '(': type = Tok::LParen; break;
                case ')': type = Tok::RParen; break;
                case ',': type = Tok::Comma; break;
                case ';': type = Tok::Semi; break;
                case ':': type = Tok::Colon; break;
                case '/': type = Tok::Slash; break;
                case '*': type = Tok::Star; break;
                case '=': type = Tok::Equals; break;
                case '#': type = Tok::Hash; break;
                case '-':
                    if (pos + 1 < text.size() && text[pos + 1] == '>') {
                        span.length = 2;
                        advance();
                        advance();
                        tokens.push_back({Tok::Arrow, "->", span});
                        continue;
                    }
                    errors.push_back({span, "unexpected character '-'", "'->'"});
                    return tokens;
                default:
                    errors.push_back({span, std::string("unexpected character '") + c + "'", ""});
                    return tokens;
            }
            tokens.push_back({type, std::string(1, c), span});
            advance();
        }
        SourceSpan end{line, column, pos, 0};
        tokens.push_back({Tok::End, "", end});
        return tokens;
    }
};

struct Parser {
    const std::vector<Token>& tokens;
    const HookRegistry& hooks;
    std::vector<ParseError>& errors;
    std::size_t pos = 0;
    bool failed = false;  // syntax failure: stop consuming input

    Parser(const std::vector<Token>& t, const HookRegistry& h, std::vector<ParseError>& e)
        : tokens(t), hooks(h), errors(e) {}

    const Token& peek() const { return tokens[pos]; }
    const Token& next() { return tokens[pos + 1 < tokens.size() ? pos++ : pos]; }

    bool at_keyword(const char* word) const {
        return peek().type == Tok::Ident && peek().text == word;
    }

    void syntax_error(std::string message, std::string expected) {
        errors.push_back({peek().span, std::move(message), std::move(expected)});
        failed = true;
    }

    void semantic_error(const SourceSpan& span, std::string message) {
        errors.push_back({span, std::move(message), ""});
    }

    bool expect(Tok type) {
        if (peek().type == type) {
            next();
            return true;
        }
        syntax_error(std::string("expected ") + token_name(type), token_name(type));
        return false;
    }

    bool expect_keyword(const char* word) {
        if (at_keyword(word)) {
            next();
            return true;
        }
        syntax_error(std::string("expected '") + word + "'", word);
        return false;
    }

    std::optional<Token> expect_ident(const char* what) {
        if (peek().type == Tok::Ident) return next();
        syntax_error(std::string("expected ") + what, "identifier");
        return std::nullopt;
    }

    std::optional<Token> expect_nat(const char* what) {
        if (peek().type == Tok::Nat) return next();
        syntax_error(std::string("expected ") + what, "number");
        return std::nullopt;
    }

    // --- parsed shapes carrying spans for the semantic pass ---
    struct Ref {
        std::string name;
        SourceSpan span;
        Cardinal number;  // radix, rate, or init value
        SourceSpan number_span;
    };
    struct ParsedOp {
        std::string id;
        SourceSpan id_span;
        OperatorForm form = OperatorForm::M;
        std::vector<Ref> operands;
        std::vector<Ref> images;
        OperatorKind kind = OperatorKind::radix_multiplicity();
    };

    std::string cao_name;
    SourceSpan cao_name_span;
    std::vector<Ref> entity_decls;
    std::vector<ParsedOp> ops;
    std::vector<Ref> init_entries;

    void parse_document() {
        if (!expect_keyword("cao")) return;
        auto name = expect_ident("network name");
        if (!name) return;
        cao_name = name->text;
        cao_name_span = name->span;
        if (!expect(Tok::LBrace)) return;
        parse_entities();
        if (failed) return;
        if (!at_keyword("op")) {
            syntax_error("expected at least one operator", "op");
            return;
        }
        while (at_keyword("op")) {
            parse_op();
            if (failed) return;
        }
        if (at_keyword("init")) {
            parse_init();
            if (failed) return;
        }
        if (!expect(Tok::RBrace)) return;
        if (peek().type != Tok::End) syntax_error("expected end of input", "end of input");
    }

    void parse_entities() {
        if (!expect_keyword("entities") || !expect(Tok::Colon)) return;
        while (true) {
            auto ident = expect_ident("entity name");
            if (!ident) return;
            entity_decls.push_back({ident->text, ident->span, 0, {}});
            if (peek().type == Tok::Comma) {
                next();
                continue;
            }
            break;
        }
        expect(Tok::Semi);
    }

    std::optional<Ref> parse_pair(Tok separator, const char* noun) {
        auto ident = expect_ident(noun);
        if (!ident) return std::nullopt;
        if (!expect(separator)) return std::nullopt;
        auto nat = expect_nat(separator == Tok::Slash ? "radix" : "conversion rate");
        if (!nat) return std::nullopt;
        return Ref{ident->text, ident->span, Cardinal(nat->text), nat->span};
    }

    void parse_op() {
        expect_keyword("op");
        auto id = expect_ident("operator id");
        if (!id || !expect(Tok::Colon)) return;
        ParsedOp op;
        op.id = id->text;
        op.id_span = id->span;

        auto form = expect_ident("form L, D, F or M");
        if (!form) return;
        if (form->text == "L")
            op.form = OperatorForm::L;
        else if (form->text == "D")
            op.form = OperatorForm::D;
        else if (form->text == "F")
            op.form = OperatorForm::F;
        else if (form->text == "M")
            op.form = OperatorForm::M;
        else {
            errors.push_back({form->span, "unknown form '" + form->text + "'", "L, D, F or M"});
            failed = true;
            return;
        }

        if (!expect(Tok::LParen)) return;
        while (true) {
            auto operand = parse_pair(Tok::Slash, "operand entity");
            if (!operand) return;
            op.operands.push_back(std::move(*operand));
            if (peek().type == Tok::Comma) {
                next();
                continue;
            }
            break;
        }
        if (!expect(Tok::RParen) || !expect(Tok::Arrow) || !expect(Tok::LParen)) return;
        while (true) {
            auto image = parse_pair(Tok::Star, "image entity");
            if (!image) return;
            op.images.push_back(std::move(*image));
            if (peek().type == Tok::Comma) {
                next();
                continue;
            }
            break;
        }
        if (!expect(Tok::RParen)) return;

        if (at_keyword("kind")) {
            next();
            if (peek().type == Tok::Hash) {
                next();
                op.kind = OperatorKind::radix_multiplicity();
            } else if (at_keyword("delta")) {
                next();
                op.kind = OperatorKind::radix_excess_value();
            } else if (at_keyword("fact")) {
                next();
                op.kind = OperatorKind::radix_excess_fact();
            } else if (at_keyword("fn")) {
                next();
                auto hook = expect_ident("hook name");
                if (!hook) return;
                auto it = hooks.find(hook->text);
                if (it == hooks.end()) {
                    semantic_error(hook->span, "unknown function hook '" + hook->text + "'");
                } else {
                    op.kind = OperatorKind::arbitrary(hook->text, it->second.first,
                                                      it->second.second);
                }
            } else {
                syntax_error("expected kind '#', 'delta', 'fact' or 'fn NAME'",
                             "#, delta, fact or fn");
                return;
            }
        }
        if (!expect(Tok::Semi)) return;

        validate_valence(op);
        ops.push_back(std::move(op));
    }

    void validate_valence(const ParsedOp& op) {
        switch (op.form) {
            case OperatorForm::L:
                if (op.operands.size() != 1)
                    semantic_error(op.operands[1].span, "form L requires exactly one operand");
                if (op.images.size() != 1)
                    semantic_error(op.images[1].span, "form L requires exactly one image");
                break;
            case OperatorForm::D:
                if (op.operands.size() != 1)
                    semantic_error(op.operands[1].span, "form D requires exactly one operand");
                if (op.images.size() < 2)
                    semantic_error(op.images[0].span, "form D requires at least two images");
                break;
            case OperatorForm::F:
                if (op.operands.size() < 2)
                    semantic_error(op.operands[0].span, "form F requires at least two operands");
                if (op.images.size() != 1)
                    semantic_error(op.images[1].span, "form F requires exactly one image");
                break;
            default:
                break;
        }
    }

    void parse_init() {
        expect_keyword("init");
        if (!expect(Tok::Colon)) return;
        while (true) {
            auto ident = expect_ident("entity name");
            if (!ident) return;
            if (!expect(Tok::Equals)) return;
            auto nat = expect_nat("initial cardinal");
            if (!nat) return;
            init_entries.push_back({ident->text, ident->span, Cardinal(nat->text), nat->span});
            if (peek().type == Tok::Comma) {
                next();
                continue;
            }
            break;
        }
        expect(Tok::Semi);
    }

    // Name resolution and structural checks, each reported at its token.
    void semantic_pass() {
        std::map<std::string, SourceSpan> declared;
        for (const auto& e : entity_decls) {
            if (!declared.emplace(e.name, e.span).second)
                semantic_error(e.span, "duplicate entity " + e.name);
        }
        auto known = [&](const Ref& ref) {
            if (declared.count(ref.name)) return true;
            semantic_error(ref.span, "unknown entity " + ref.name);
            return false;
        };

        std::map<std::string, SourceSpan> op_ids;
        std::map<std::string, std::string> output_of;
        for (const auto& op : ops) {
            if (!op_ids.emplace(op.id, op.id_span).second)
                semantic_error(op.id_span, "duplicate operator id " + op.id);

            std::map<std::string, SourceSpan> operand_names, image_names;
            for (const auto& operand : op.operands) {
                if (!known(operand)) continue;
                if (operand.number < 1)
                    semantic_error(operand.number_span, "zero radix for " + operand.name);
                if (!operand_names.emplace(operand.name, operand.span).second)
                    semantic_error(operand.span, "duplicate operand " + operand.name);
                else if (auto [it, inserted] = output_of.emplace(operand.name, op.id); !inserted)
                    semantic_error(operand.span, "entity " + operand.name + " has two outputs");
            }
            bool any_positive_rate = false;
            for (const auto& image : op.images) {
                if (!known(image)) continue;
                if (image.number > 0) any_positive_rate = true;
                if (!image_names.emplace(image.name, image.span).second)
                    semantic_error(image.span, "duplicate image " + image.name);
                if (operand_names.count(image.name))
                    semantic_error(image.span,
                                   "entity " + image.name + " appears as both operand and image");
            }
            if (!any_positive_rate)
                semantic_error(op.id_span, "operator " + op.id + " has no positive conversion rate");
        }

        std::map<std::string, SourceSpan> init_names;
        for (const auto& entry : init_entries) {
            known(entry);
            if (!init_names.emplace(entry.name, entry.span).second)
                semantic_error(entry.span, "duplicate init entry for " + entry.name);
        }
    }

    std::optional<Cao> build() {
        std::vector<CardinalAbstractEntity> entities;
        entities.reserve(entity_decls.size());
        for (const auto& e : entity_decls) entities.push_back({EntityName(e.name), 0});

        std::vector<OperatorSpec> operators;
        operators.reserve(ops.size());
        for (const auto& op : ops) {
            OperatorSpec spec;
            spec.op_id = op.id;
            spec.form = op.form;
            spec.kind = op.kind;
            for (const auto& operand : op.operands)
                spec.operands.push_back({EntityName(operand.name), operand.number});
            for (const auto& image : op.images)
                spec.images.push_back({EntityName(image.name), image.number});
            operators.push_back(std::move(spec));
        }

        std::map<EntityName, Cardinal> init;
        for (const auto& entry : init_entries) init.emplace(EntityName(entry.name), entry.number);

        CaoBuildResult built = new_cao(cao_name, std::move(entities), std::move(operators),
                                       std::move(init));
        if (!built.ok()) {
            // The semantic pass mirrors new_cao; anything it missed lands
            // on the network header.
            for (const auto& err : built.errors) semantic_error(cao_name_span, err.message);
            return std::nullopt;
        }
        return std::move(built.cao);
    }
};

}  // namespace

ParseResult parse(std::string_view text, const HookRegistry& hooks) {
    ParseResult result;
    Lexer lexer(text, result.errors);
    std::vector<Token> tokens = lexer.lex();
    if (!result.errors.empty()) return result;

    Parser parser(tokens, hooks, result.errors);
    parser.parse_document();
    if (!parser.failed) parser.semantic_pass();
    if (!result.errors.empty()) return result;

    result.cao = parser.build();
    return result;
}

namespace {

const char* form_text(OperatorForm form) {
    switch (form) {
        case OperatorForm::L: return "L";
        case OperatorForm::D: return "D";
        case OperatorForm::F: return "F";
        case OperatorForm::M: return "M";
        default: return "?";
    }
}

std::string plain_name(const EntityName& name) {
    if (!name.coords.empty())
        throw std::invalid_argument("entity name not representable in text form: " + name.str());
    return name.id;
}

}  // namespace

std::string serialize(const Cao& cao) {
    std::ostringstream out;
    out << "cao " << cao.name << " {\n";
    out << "  entities: ";
    for (std::size_t i = 0; i < cao.entities.size(); ++i) {
        if (i) out << ", ";
        out << plain_name(cao.entities[i].name);
    }
    out << ";\n";
    for (const auto& op : cao.operators) {
        out << "  op " << op.op_id << ": " << form_text(op.form) << " (";
        for (std::size_t i = 0; i < op.operands.size(); ++i) {
            if (i) out << ", ";
            out << plain_name(op.operands[i].entity) << "/" << op.operands[i].radix.str();
        }
        out << ") -> (";
        for (std::size_t i = 0; i < op.images.size(); ++i) {
            if (i) out << ", ";
            out << plain_name(op.images[i].entity) << "*" << op.images[i].rate.str();
        }
        out << ")";
        switch (op.kind.tag) {
            case KindTag::RadixMultiplicity: break;
            case KindTag::RadixExcessValue: out << " kind delta"; break;
            case KindTag::RadixExcessFact: out << " kind fact"; break;
            case KindTag::ArbitraryFunction: out << " kind fn " << op.kind.hook_name; break;
        }
        out << ";\n";
    }
    if (!cao.init.empty()) {
        out << "  init: ";
        bool first = true;
        for (const auto& [name, value] : cao.init) {
            if (!first) out << ", ";
            first = false;
            out << plain_name(name) << " = " << value.str();
        }
        out << ";\n";
    }
    out << "}\n";
    return out.str();
}

}  // namespace sns
