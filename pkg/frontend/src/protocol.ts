// Wire schema mirror (see docs/wire_protocol.md in the repo root).
// The client performs no game logic: every field here is display-only
// except legal_actions, which gates the action buttons.

export type ActionName = "PASS" | "BET" | "CALL" | "RAISE" | "FOLD";

export interface StatePayload {
  session_id: string;
  round: number;
  pot: number;
  your_hole: string;
  your_up: string[];
  opp_up: string[];
  to_act: "you" | "opponent" | null;
  legal_actions: ActionName[];
  raises_this_round: number;
  history: { player: "you" | "opponent"; action: ActionName; round: number }[];
  phase: "dealing" | "betting" | "showdown" | "settled" | "folded";
  session_net: number;
  games_played: number;
}

export interface ResultPayload {
  session_id: string;
  winner: "you" | "opponent" | "tie";
  your_net: number;
  opp_hole: string | null;
  opp_hand_type: string | null;
  session_net: number;
  games_played: number;
}

export interface ActionRequestPayload {
  legal_actions: ActionName[];
}

export interface ErrorPayload {
  error: string;
  legal_actions?: ActionName[];
}

export type WireMessage =
  | { kind: "state"; version: number; payload: StatePayload }
  | { kind: "result"; version: number; payload: ResultPayload }
  | { kind: "action_request"; version: number; payload: ActionRequestPayload }
  | { kind: "error"; version: number; payload: ErrorPayload };

export const SUIT_GLYPHS: Record<string, string> = {
  C: "♣",
  D: "♦",
  H: "♥",
  S: "♠",
};

export function cardGlyph(card: string): string {
  if (card.length !== 2) return card;
  const rank = card[0] === "T" ? "10" : card[0];
  return rank + (SUIT_GLYPHS[card[1]] ?? card[1]);
}

export function isRedSuit(card: string): boolean {
  return card.endsWith("D") || card.endsWith("H");
}
