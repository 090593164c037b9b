import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";
import { debounce } from "../src/debounce.js";

describe("debounce", () => {
  beforeEach(() => vi.useFakeTimers());
  afterEach(() => vi.useRealTimers());

  it("fires once per burst with the last arguments", () => {
    const calls: number[] = [];
    const d = debounce((x: number) => calls.push(x), 80);
    for (let i = 0; i < 20; i++) {
      d(i);
      vi.advanceTimersByTime(10); // within the idle window
    }
    expect(calls).toEqual([]);
    vi.advanceTimersByTime(80);
    expect(calls).toEqual([19]);
  });

  it("fires again after a quiet gap", () => {
    const calls: number[] = [];
    const d = debounce((x: number) => calls.push(x), 80);
    d(1);
    vi.advanceTimersByTime(100);
    d(2);
    vi.advanceTimersByTime(100);
    expect(calls).toEqual([1, 2]);
  });

  it("cancel drops the pending call", () => {
    const calls: number[] = [];
    const d = debounce((x: number) => calls.push(x), 80);
    d(1);
    d.cancel();
    vi.advanceTimersByTime(200);
    expect(calls).toEqual([]);
  });

  it("flush runs the pending call immediately", () => {
    const calls: number[] = [];
    const d = debounce((x: number) => calls.push(x), 80);
    d(7);
    d.flush();
    expect(calls).toEqual([7]);
    d.flush(); // no pending call, no effect
    expect(calls).toEqual([7]);
  });
});
