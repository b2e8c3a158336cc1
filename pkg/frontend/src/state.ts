/** Client-side session state: current display, selection, staleness guard. */

import type { CandidateView, SessionResponse } from "./api.js";

export class UiSessionState {
  generation = 0;
  candidates: CandidateView[] = [];
  modelId: string | null = null;
  private selected = new Set<string>();

  constructor(readonly sessionId: string) {}

  /**
   * Adopt a server response: the new display replaces the old one and any
   * selection is cleared, so ids from a superseded display can never be
   * submitted.
   */
  apply(response: SessionResponse): void {
    this.generation = response.generation;
    this.candidates = response.candidates;
    this.selected.clear();
  }

  /** Toggle a displayed candidate; unknown ids are ignored. */
  toggle(candidateId: string): boolean {
    if (!this.candidates.some((c) => c.candidate_id === candidateId)) {
      return false;
    }
    if (this.selected.has(candidateId)) {
      this.selected.delete(candidateId);
    } else {
      this.selected.add(candidateId);
    }
    return true;
  }

  isSelected(candidateId: string): boolean {
    return this.selected.has(candidateId);
  }

  /** Selected ids in display order. */
  selectedIds(): string[] {
    return this.candidates
      .map((c) => c.candidate_id)
      .filter((id) => this.selected.has(id));
  }

  get canStep(): boolean {
    return this.selected.size > 0;
  }

  get selectionCount(): number {
    return this.selected.size;
  }
}
