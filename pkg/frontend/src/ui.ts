// Browser table view: renders each pushed state, enables exactly the legal
// action buttons, and shows showdown results with the running session score.
// All rules live server-side; this file only mirrors the last wire message.

import { PokerClient } from "./client.js";
import {
  ActionName,
  ResultPayload,
  StatePayload,
  cardGlyph,
  isRedSuit,
} from "./protocol.js";

const ALL_ACTIONS: ActionName[] = ["FOLD", "CALL", "PASS", "BET", "RAISE"];

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function renderCard(card: string, hidden = false): string {
  if (hidden) return `<span class="card back">?</span>`;
  const color = isRedSuit(card) ? "red" : "black";
  return `<span class="card ${color}">${cardGlyph(card)}</span>`;
}

class TableUI {
  client: PokerClient | null = null;
  lastState: StatePayload | null = null;

  start(): void {
    el<HTMLButtonElement>("join").addEventListener("click", () => void this.join());
    el<HTMLButtonElement>("next").addEventListener("click", () => this.client?.nextGame());
    for (const action of ALL_ACTIONS) {
      el<HTMLButtonElement>(`act-${action}`).addEventListener("click", () => {
        this.setButtons([]); // one submission per request; re-enabled on echo
        this.client?.submitAction(action);
      });
    }
  }

  async join(): Promise<void> {
    const name = el<HTMLInputElement>("name").value.trim() || undefined;
    const seedRaw = el<HTMLInputElement>("seed").value.trim();
    const seed = seedRaw ? Number(seedRaw) : undefined;
    this.client = new PokerClient(window.location.origin, {
      onState: (s) => this.renderState(s),
      onActionRequest: (req) => this.setButtons(req.legal_actions),
      onResult: (r) => this.renderResult(r),
      onError: (err) => {
        el("message").textContent = err.error;
        if (err.legal_actions) this.setButtons(err.legal_actions);
      },
      onClose: () => {
        el("message").textContent = "connection closed";
      },
    });
    await this.client.createSession(name, seed);
    await this.client.connect();
    el("lobby").style.display = "none";
    el("table").style.display = "block";
  }

  setButtons(legal: ActionName[]): void {
    for (const action of ALL_ACTIONS) {
      el<HTMLButtonElement>(`act-${action}`).disabled = !legal.includes(action);
    }
  }

  renderState(state: StatePayload): void {
    this.lastState = state;
    el("opp-cards").innerHTML =
      renderCard("", true) + state.opp_up.map((c) => renderCard(c)).join("");
    el("your-cards").innerHTML =
      renderCard(state.your_hole) + state.your_up.map((c) => renderCard(c)).join("");
    el("pot").textContent = String(state.pot);
    el("round").textContent = String(state.round);
    el("score").textContent = String(state.session_net);
    el("games").textContent = String(state.games_played);
    el("turn").textContent =
      state.phase !== "betting" ? "" : state.to_act === "you" ? "your move" : "opponent thinking";
    el("history").innerHTML = state.history
      .map((h) => `<li>r${h.round} ${h.player === "you" ? "you" : "opp"}: ${h.action}</li>`)
      .join("");
    if (state.to_act !== "you") this.setButtons([]);
    el<HTMLButtonElement>("next").disabled = state.phase === "betting";
    if (state.phase === "betting") el("message").textContent = "";
  }

  renderResult(result: ResultPayload): void {
    const verdict =
      result.winner === "tie" ? "split pot" : result.winner === "you" ? "you win" : "opponent wins";
    const reveal = result.opp_hole
      ? ` opponent hole ${cardGlyph(result.opp_hole)} (${result.opp_hand_type ?? ""})`
      : " (no showdown)";
    el("message").textContent = `${verdict}: ${result.your_net >= 0 ? "+" : ""}${result.your_net} units.${reveal}`;
    el("score").textContent = String(result.session_net);
    el("games").textContent = String(result.games_played);
    this.setButtons([]);
    el<HTMLButtonElement>("next").disabled = false;
  }
}

new TableUI().start();
