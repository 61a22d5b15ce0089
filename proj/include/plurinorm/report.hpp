#pragma once

// Deterministic result emission. Output trees keep insertion order and all
// floating-point values are printed with %.17g, so identical runs produce
// byte-identical files. (The usual shortest-round-trip printers are also
// deterministic, but pinning 17 significant digits keeps the format
// independent of the serializer.)

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace plurinorm {

std::string fmt_double(double v);  // %.17g; nan/inf spelled "nan"/"inf"/"-inf"

class Json {
public:
    Json() : node_(nullptr) {}

    static Json null() { return Json(); }
    static Json boolean(bool b) { return Json(Node{b}); }
    static Json integer(long long v) { return Json(Node{v}); }
    static Json real(double v) { return Json(Node{v}); }
    static Json str(std::string s) { return Json(Node{std::move(s)}); }
    static Json array() { return Json(Node{Arr{}}); }
    static Json object() { return Json(Node{Obj{}}); }

    // Object field (insertion order preserved); returns *this for chaining.
    Json& set(const std::string& key, Json v);
    // Array append.
    Json& push(Json v);

    std::string dump(int indent = 2) const;

private:
    struct Node;
    using Arr = std::vector<Json>;
    struct Obj {
        std::vector<std::pair<std::string, Json>> fields;
    };
    struct Node {
        std::variant<std::nullptr_t, bool, long long, double, std::string, Arr, Obj> v;
        Node() : v(nullptr) {}
        explicit Node(bool b) : v(b) {}
        explicit Node(long long i) : v(i) {}
        explicit Node(double d) : v(d) {}
        explicit Node(std::string s) : v(std::move(s)) {}
        explicit Node(Arr a) : v(std::move(a)) {}
        explicit Node(Obj o) : v(std::move(o)) {}
    };

    explicit Json(Node n) : node_(std::make_shared<Node>(std::move(n))) {}
    void dump_to(std::string& out, int indent, int depth) const;

    std::shared_ptr<Node> node_;
};

// Creates or truncates path; throws std::runtime_error on failure.
void write_file(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

}  // namespace plurinorm
