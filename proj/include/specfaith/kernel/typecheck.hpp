#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "specfaith/kernel/ast.hpp"
#include "specfaith/kernel/value.hpp"

namespace specfaith {

/// The fixed input/output types of a task.
struct TaskSignature {
  std::vector<TypeDeclPtr> types;
  std::string input_type = "In1";
  std::string output_type = "Out";

  TypeDeclPtr find(std::string_view name) const;
  TypeRef input() const { return TypeRef::named(input_type); }
  TypeRef output() const { return TypeRef::named(output_type); }
  DeclLookup lookup() const;

  /// Parses `struct`/`enum` declarations and checks that both named types
  /// exist and every field type is well formed. Throws SpecError.
  static TaskSignature from_source(std::string_view declarations, std::string input_type = "In1",
                                   std::string output_type = "Out");
};

/// A parsed module whose expressions carry type, slot and builtin
/// annotations. Immutable once built, so it can be shared between threads.
class TypedModule {
 public:
  const SpecModule& module() const { return module_; }
  const TaskSignature& signature() const { return signature_; }
  /// All user types: the signature's plus the module's own.
  const std::vector<TypeDeclPtr>& types() const { return types_; }
  TypeDeclPtr find_type(std::string_view name) const;
  DeclLookup lookup() const;

  const SpecFn& pre_spec() const { return module_.fns[pre_index_]; }
  const SpecFn& post_spec() const { return module_.fns[post_index_]; }
  std::size_t pre_index() const { return pre_index_; }
  std::size_t post_index() const { return post_index_; }

 private:
  friend std::shared_ptr<const TypedModule> typecheck_module(SpecModule, const TaskSignature&);
  TypedModule() = default;

  SpecModule module_;
  TaskSignature signature_;
  std::vector<TypeDeclPtr> types_;
  std::size_t pre_index_ = 0;
  std::size_t post_index_ = 0;
};

using TypedModulePtr = std::shared_ptr<const TypedModule>;

/// Resolves names, annotates every expression with its type, checks the
/// pre_spec/post_spec shapes against `signature` and computes quantifier
/// shapes. Throws TypeError, ShapeError or DuplicateDefinition. Guard
/// violations are recorded on the quantifier; see validate_quantifiers.
TypedModulePtr typecheck_module(SpecModule module, const TaskSignature& signature);

/// parse_module + typecheck_module + validate_quantifiers.
TypedModulePtr compile_module(std::string_view source, const TaskSignature& signature);

}  // namespace specfaith
