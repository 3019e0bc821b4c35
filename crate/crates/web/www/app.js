// Built with: wasm-pack build crates/web --target web --out-dir www/pkg
import init, { spectrum, line_certificate, walk } from "./pkg/dregular_web.js";

const $ = (id) => document.getElementById(id);

function show(id, text, isError) {
  const el = $(id);
  el.textContent = text;
  el.className = isError ? "err" : "";
}

// Points in the complex plane with circles of radius sqrt(k) and k.
function plotPlane(canvas, k, layers) {
  const ctx = canvas.getContext("2d");
  const w = canvas.width, h = canvas.height;
  const scale = (0.45 * w) / k;
  ctx.clearRect(0, 0, w, h);
  ctx.strokeStyle = "#ddd";
  ctx.beginPath();
  ctx.moveTo(0, h / 2); ctx.lineTo(w, h / 2);
  ctx.moveTo(w / 2, 0); ctx.lineTo(w / 2, h);
  ctx.stroke();
  for (const [r, color] of [[Math.sqrt(k), "#2a7"], [k, "#999"]]) {
    ctx.strokeStyle = color;
    ctx.beginPath();
    ctx.arc(w / 2, h / 2, r * scale, 0, 2 * Math.PI);
    ctx.stroke();
  }
  for (const { points, color, size } of layers) {
    ctx.fillStyle = color;
    for (const [re, im] of points) {
      ctx.beginPath();
      ctx.arc(w / 2 + re * scale, h / 2 - im * scale, size, 0, 2 * Math.PI);
      ctx.fill();
    }
  }
}

function runSpectrum() {
  try {
    const r = JSON.parse(spectrum($("spec").value));
    plotPlane($("plane"), r.k, [{ points: r.eigenvalues, color: "#c33", size: 3 }]);
    show("spectrum-out",
      `n = ${r.n}, k = ${r.k}, period = ${r.m}\n` +
      `rho0 = ${r.rho0.toFixed(6)}  sqrt(k) = ${r.sqrt_k.toFixed(6)}\n` +
      `Ramanujan: ${r.ramanujan}`);
  } catch (e) {
    show("spectrum-out", String(e), true);
  }
}

function runLine() {
  try {
    const r = JSON.parse(line_certificate($("graph").value));
    plotPlane($("line-plane"), r.k, [
      { points: r.predicted, color: "#36c", size: 5 },
      { points: r.computed, color: "#c33", size: 2.5 },
    ]);
    show("line-out",
      `${r.n} arcs, k = ${r.k}, ${r.blocks} blocks covering dimension ${r.covered_dim}\n` +
      `block residual ${r.residual.toExponential(2)}, orthogonality ${r.orthogonality.toExponential(2)}\n` +
      `rho0 = ${r.rho0.toFixed(6)}, Ramanujan: ${r.ramanujan}\n` +
      `blue: predicted from the graph, red: computed`);
  } catch (e) {
    show("line-out", String(e), true);
  }
}

function runWalk() {
  try {
    const r = JSON.parse(walk($("walk-spec").value, Number($("walk-start").value), Number($("walk-lmax").value)));
    const canvas = $("walk-plot");
    const ctx = canvas.getContext("2d");
    const w = canvas.width, h = canvas.height, pad = 30;
    const x = (ell) => pad + (ell * (w - 2 * pad)) / (r.tv.length - 1);
    const y = (v) => h - pad - Math.min(v, 1) * (h - 2 * pad);
    ctx.clearRect(0, 0, w, h);
    ctx.strokeStyle = "#999";
    ctx.strokeRect(pad, pad, w - 2 * pad, h - 2 * pad);
    const line = (values, offset, color) => {
      ctx.strokeStyle = color;
      ctx.beginPath();
      values.forEach((v, i) => (i ? ctx.lineTo : ctx.moveTo).call(ctx, x(i + offset), y(v)));
      ctx.stroke();
    };
    line(r.tv_bound, 1, "#36c");
    line(r.tv, 0, "#c33");
    ctx.strokeStyle = "#2a7";
    ctx.beginPath();
    ctx.moveTo(x(r.log_k_n), pad); ctx.lineTo(x(r.log_k_n), h - pad);
    ctx.stroke();
    show("walk-out",
      `n = ${r.n}, k = ${r.k}, log_k n = ${r.log_k_n.toFixed(2)} (green)\n` +
      `first step with TV < 1/e: ${r.cutoff_step ?? "none"}\n` +
      `red: distance from uniform, blue: spectral upper bound`);
  } catch (e) {
    show("walk-out", String(e), true);
  }
}

await init();
$("run-spectrum").onclick = runSpectrum;
$("run-line").onclick = runLine;
$("run-walk").onclick = runWalk;
runSpectrum();
runLine();
runWalk();
