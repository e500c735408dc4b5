#include "graphivm/session.hpp"

#include "graphivm/cypher/parser.hpp"
#include "graphivm/gra_compiler.hpp"
#include "graphivm/graph_io.hpp"
#include "graphivm/lowering.hpp"

namespace graphivm {

std::string_view to_string(Stage s) {
  switch (s) {
    case Stage::Gra: return "gra";
    case Stage::Nra: return "nra";
    case Stage::Fra: return "fra";
  }
  return "?";
}

std::optional<Stage> parse_stage(std::string_view text) {
  if (text == "gra") return Stage::Gra;
  if (text == "nra") return Stage::Nra;
  if (text == "fra") return Stage::Fra;
  return std::nullopt;
}

StageError::StageError(std::string stage, const Error& cause)
    : Error(cause.kind(), cause.message(), cause.pos()), stage_(std::move(stage)) {}

Session::Session(rete::EngineConfig config)
    : config_(config), graph_(std::make_unique<PropertyGraph>()) {}

// Networks unsubscribe from the graph on destruction, so they must go first.
Session::~Session() { queries_.clear(); }

void Session::load(PropertyGraph graph) {
  for (auto& [name, q] : queries_) q.network.reset();
  *graph_ = std::move(graph);
  rebuild_all();
}

void Session::load_file(const std::string& path) { load(load_graph_file(path)); }

namespace {

template <typename F>
auto staged(const char* stage, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    throw StageError(stage, e);
  }
}

}  // namespace

void Session::start(RegisteredQuery& q) {
  q.network.reset();
  auto net = staged("network", [&] { return std::make_unique<rete::Network>(q.fra, *graph_, config_); });
  staged("network", [&] { return net->initialize(); });
  q.network = std::move(net);
}

void Session::rebuild_all() {
  for (auto& [name, q] : queries_) q.network.reset();
  for (auto& [name, q] : queries_) start(q);
}

const RegisteredQuery& Session::register_query(const std::string& name, const std::string& text) {
  RegisteredQuery q;
  q.name = name;
  q.text = text;
  auto ast = staged("parse", [&] { return cypher::parse_query(text); });
  q.validated = staged("validate", [&] { return cypher::validate(std::move(ast)); });
  q.gra = staged("compile", [&] { return compile(q.validated); });
  LoweringOptions options;
  options.label_preservation = config_.label_preservation;
  q.nra = staged("lower", [&] { return lower_to_nra(q.gra, options); });
  q.fra = staged("lower", [&] { return compute_flat_schemas(infer_required_properties(q.nra)); });
  if (auto it = queries_.find(name); it != queries_.end()) queries_.erase(it);
  start(q);
  return queries_.emplace(name, std::move(q)).first->second;
}

std::vector<QueryDelta> Session::propagate(const std::vector<Notification>& notes, bool coalesce,
                                           const std::vector<GraphDelta>& undo) {
  std::vector<QueryDelta> out;
  try {
    for (auto& [name, q] : queries_) {
      ChangeSet delta = q.network->propagate(notes, coalesce);
      if (!delta.empty()) out.push_back({name, std::move(delta)});
    }
  } catch (const Error&) {
    for (auto it = undo.rbegin(); it != undo.rend(); ++it) graph_->apply_delta(*it);
    rebuild_all();
    throw;
  }
  return out;
}

std::vector<QueryDelta> Session::apply(const GraphDelta& delta) {
  return apply_batch({delta});
}

std::vector<QueryDelta> Session::apply_batch(const std::vector<GraphDelta>& deltas) {
  std::vector<Notification> notes;
  std::vector<GraphDelta> undo;
  std::optional<Error> failure;
  for (const auto& d : deltas) {
    try {
      auto inverse = graph_->inverse_of(d);
      auto produced = graph_->apply_delta(d);
      // Undo steps of one delta must run in their own order after the later
      // deltas are undone, so push them reversed.
      undo.insert(undo.end(), inverse.rbegin(), inverse.rend());
      std::move(produced.begin(), produced.end(), std::back_inserter(notes));
    } catch (const Error& e) {
      failure = e;
      break;
    }
  }
  auto out = propagate(notes, deltas.size() > 1, undo);
  if (failure) throw *failure;
  return out;
}

const RegisteredQuery& Session::query(const std::string& name) const {
  auto it = queries_.find(name);
  if (it == queries_.end()) throw Error(ErrorKind::UnknownQuery, "no query named '" + name + "'");
  return it->second;
}

std::vector<std::string> Session::query_names() const {
  std::vector<std::string> names;
  for (const auto& [name, q] : queries_) names.push_back(name);
  return names;
}

std::vector<Tuple> Session::results(const std::string& name) const {
  return query(name).network->read_results();
}

std::string Session::explain(const std::string& name, Stage stage) const {
  const RegisteredQuery& q = query(name);
  switch (stage) {
    case Stage::Gra: return plan_text(q.gra);
    case Stage::Nra: return plan_text(q.nra);
    case Stage::Fra: return plan_text(q.fra);
  }
  return {};
}

std::string format_row(const Tuple& row, const IdNames* names) {
  std::string out;
  for (size_t i = 0; i < row.size(); ++i) {
    if (i) out += '\t';
    out += display(row[i], names);
  }
  return out;
}

}  // namespace graphivm
