// Built by `wasm-pack build crates/wasm --target web --out-dir www/pkg`.
import init, { bracket, normalForm, checkSystem } from "./pkg/lsgsb_wasm.js";

const $ = (id) => document.getElementById(id);
const common = () => [$("alphabet").value, $("order").value];

function show(out, f) {
  try {
    out.classList.remove("bad");
    out.textContent = f();
  } catch (e) {
    out.classList.add("bad");
    out.textContent = String(e.message ?? e);
  }
}

function bracketText(json) {
  const r = JSON.parse(json);
  if (r.lyndon_shirshov) return `${r.word}\n${r.bracketing}`;
  return `${r.word} is not Lyndon-Shirshov\nLyndon factors: ${r.factors.join(" | ")}`;
}

function nfText(json) {
  const r = JSON.parse(json);
  const steps = r.steps.map((s) => `${s.coefficient} * ${s.word}  [${s.relation} at ${s.context}]  ->  ${s.replacement}`);
  return [...steps, `normal form: ${r.normal_form || "0"}`].join("\n");
}

function gsbText(json) {
  const r = JSON.parse(json);
  const lines = [
    `${r.opi}`,
    `order ${r.order}, bound ${r.degree_bound}, ${r.relations} relations, ${r.compositions.length} compositions`,
  ];
  for (const c of r.compositions.filter((c) => c.residue).slice(0, 5)) {
    lines.push(`  ${c.kind} at ${c.w}: residue ${c.residue}`);
  }
  const x = r.equivalence_crosschecks;
  if (x) {
    lines.push(`forks ${x.forks_joinable.verdict}, strategies ${x.strategy_independent.verdict}, ` +
      `dimension identity ${x.cd_identity ? x.cd_identity.verdict : "skipped"}, associative ${x.associative.verdict}`);
  }
  lines.push(`verdict: ${r.verdict}`);
  return lines.join("\n");
}

await init();
$("bracket").onclick = () => show($("bracket-out"), () => bracketText(bracket($("word").value, ...common())));
$("nf").onclick = () => show($("nf-out"), () => nfText(normalForm($("nf-system").value, $("nf-poly").value, ...common())));
$("gsb").onclick = () =>
  show($("gsb-out"), () => gsbText(checkSystem($("gsb-system").value, Number($("gsb-bound").value), ...common())));
