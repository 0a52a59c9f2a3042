// Plain ES module; expects `wasm-bindgen --target web` output in ./pkg.
import init, { partitionSlice, towerColumn, liftDomino } from "./pkg/tileforge_wasm.js";

const $ = (id) => document.getElementById(id);

function call(fn, ...args) {
  const value = JSON.parse(fn(...args));
  if (value.error) throw new Error(value.error);
  return value;
}

function hue(k, count) {
  return `hsl(${Math.round((360 * k) / Math.max(count, 1))}, 65%, 55%)`;
}

function drawPartition() {
  const m = Number($("p-m").value);
  const zInput = $("p-z");
  zInput.max = String(m + 1);
  if (Number(zInput.value) > m + 1) zInput.value = String(m + 1);
  const z = Number(zInput.value);
  $("p-z-out").textContent = String(z);
  try {
    const { side, labels } = call(partitionSlice, m, z);
    const canvas = $("p-canvas");
    const ctx = canvas.getContext("2d");
    const cell = Math.floor(canvas.width / side);
    ctx.clearRect(0, 0, canvas.width, canvas.height);
    const seen = new Set();
    labels.forEach((row, y) =>
      row.forEach((label, x) => {
        if (label === 0) return;
        seen.add(label);
        ctx.fillStyle = hue(label, m);
        // y grows upward, as in the paper's figures
        ctx.fillRect(x * cell, (side - 1 - y) * cell, cell - 1, cell - 1);
      }),
    );
    $("p-status").textContent = `side ${side}, ${seen.size} of ${m} parts meet layer z = ${z}`;
  } catch (e) {
    $("p-status").textContent = e.message;
  }
}

function drawTowers() {
  const [n, a, b, c] = ["t-n", "t-a", "t-b", "t-c"].map((id) => Number($(id).value));
  const box = $("t-cells");
  box.replaceChildren();
  try {
    const result = call(towerColumn, n, a, b, c);
    const colors = { alpha: "#d55", beta: "#5a5", gamma: "#55d", free: "#eee" };
    result.cells.forEach((owner, z) => {
      const span = document.createElement("span");
      if (typeof owner === "string") {
        span.style.background = colors[owner];
        span.title = `z = ${z}: ${owner}`;
      } else {
        span.style.background = hue(owner.filler, 2 * n);
        span.textContent = owner.filler;
        span.title = `z = ${z}: filler ${owner.filler}`;
      }
      box.append(span);
    });
    const verdict = result.tileable ? "tileable by {0, n}" : "UNSAT";
    const why = result.forbidden ? " (a = b = c mod n)" : "";
    $("t-status").textContent = `period ${result.period}: ${verdict}${why}`;
  } catch (e) {
    $("t-status").textContent = e.message;
  }
}

function runLift() {
  const table = $("l-table");
  table.replaceChildren();
  try {
    const r = call(liftDomino, $("l-domino").value, $("l-grid").value, Number($("l-delta").value));
    const grid = document.createElement("table");
    grid.className = "grid";
    for (const row of [...r.triomino.values].reverse()) {
      const tr = grid.insertRow();
      for (const v of row) {
        const td = tr.insertCell();
        td.textContent = v;
        td.style.background = hue(v, r.n);
      }
    }
    table.append(grid);
    $("l-status").textContent =
      `n = ${r.n}, |S1..S4| = ${r.rule_sizes.join(", ")}, ` +
      `lift ${r.triomino.px}x${r.triomino.py} valid: ${r.valid}, projects back: ${r.round_trip}`;
  } catch (e) {
    $("l-status").textContent = e.message;
  }
}

await init();
for (const id of ["p-m", "p-z"]) $(id).addEventListener("input", drawPartition);
for (const id of ["t-n", "t-a", "t-b", "t-c"]) $(id).addEventListener("input", drawTowers);
$("l-run").addEventListener("click", runLift);
drawPartition();
drawTowers();
runLift();
