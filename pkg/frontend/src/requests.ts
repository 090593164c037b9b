/**
 * Latest-wins request sequencing: every issued request gets a rising
 * id; a response is applied only if no newer request has been issued
 * since. Stale responses are dropped silently.
 */
export class LatestWins {
  private issued = 0;
  private applied = 0;

  nextId(): number {
    return ++this.issued;
  }

  /** True if a response with this id should be applied. */
  shouldApply(id: number): boolean {
    if (id < this.issued || id <= this.applied) return false;
    this.applied = id;
    return true;
  }

  get inFlight(): boolean {
    return this.issued > this.applied;
  }
}
